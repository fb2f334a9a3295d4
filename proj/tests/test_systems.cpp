#include <doctest.h>

#include "tam/bounds.hpp"
#include "tam/error.hpp"
#include "tam/systems.hpp"

using namespace tam;

namespace {

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt power(int base, int e) {
  BigInt p = 1;
  for (int i = 0; i < e; ++i) p *= base;
  return p;
}

}  // namespace

TEST_CASE("pumping bound formulas") {
  CHECK(pumping_bound(2, 1, 1) == 48);
  CHECK(pumping_bound(3, 1, 1) == BigInt(185794560));
  for (int c = 1; c <= 3; ++c)
    for (int n = 1; n <= 5; ++n) {
      CHECK(pumping_bound(2, c, n) == factorial(3 * c) * power(n + 1, 3 * c));
      CHECK(pumping_bound(3, c, n) == factorial(9 * c * c) * power(n + 1, 9 * c * c));
    }
  CHECK_THROWS_AS(pumping_bound(4, 1, 1), Error);
  CHECK_THROWS_AS(pumping_bound(2, 0, 1), Error);
  CHECK_THROWS_AS(pumping_bound(2, 1, 0), Error);
}

TEST_CASE("chamber bounds") {
  const ChamberBounds a = chamber_bounds(1, 10);
  CHECK(a.b == 25);
  CHECK(a.h == 299);
  const ChamberBounds b = chamber_bounds(2, 48);
  CHECK(b.b == 100);
  CHECK(b.h == 49 * 102 + 2);
  const BigInt p = pumping_bound(3, 1, 1);
  CHECK(chamber_bounds(1, p).h == (p + 1) * 27 + 2);
}

TEST_CASE("A/B generator under every variant") {
  for (ModelVariant v : {ModelVariant{2, false}, ModelVariant{2, true}, ModelVariant{3, false}, ModelVariant{3, true}}) {
    const TileSystem ab = gen_undirected_ab(v);
    CHECK(ab.variant == v);
    CHECK(ab.tiles.size() == 3);
    CHECK(validate(ab).ok());
  }
}

TEST_CASE("embedding keeps the system in the z = 0 plane") {
  const TileSystem ab = gen_undirected_ab();
  const TileSystem e = embed_2d_in_3d(ab);
  CHECK(e.variant.dimension == 3);
  CHECK(e.tiles.size() == ab.tiles.size());
  const auto r = explore_producibles(e);
  CHECK(r.terminals.size() == 2);
  for (const auto& a : r.producibles)
    for (const auto& [p, _] : a.placements()) CHECK(p.z == 0);
  CHECK(embed_2d_in_3d(ab, true).variant.diffusion_restricted);
  CHECK_THROWS_AS(embed_2d_in_3d(e), Error);
}

TEST_CASE("blocking counters layout") {
  const BlockingCounters bc = gen_blocking_counters(3);
  CHECK(validate(bc.system).ok());
  REQUIRE(bc.counters.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(bc.counters[i].n == 8 + i);
    CHECK(bc.counters[i].cap_y == bc.counters[i].n + 1);
    CHECK(bc.counters[i].arm_x == bc.counters[i].msb_x - 4);
  }
  CHECK(bc.system.temperature == 2);
}

TEST_CASE("scenario: sealing the rectangle") {
  const ScenarioResult r = scenario_seal_rectangle();
  for (const auto& [k, v] : r.assertions) {
    CAPTURE(k);
    CHECK(v);
  }
  CHECK(r.values.at("rejectedIndex") == static_cast<long long>(r.trace.size()));
}

TEST_CASE("scenario: plugging the chambers") {
  const ScenarioResult r = scenario_plug_chambers(6);
  for (const auto& [k, v] : r.assertions) {
    CAPTURE(k);
    CHECK(v);
  }
  CHECK_THROWS_AS(scenario_plug_chambers(2), Error);
}

TEST_CASE("chamber tunnel is a hollow ring") {
  const Chambers ch = gen_chambers(6);
  const int x = ch.layout.tunnel_mid_x;
  int shell = 0;
  for (const Point& p : ch.layout.shell)
    if (p.x == x) ++shell;
  CHECK(shell == 8);
  for (int seed = 0; seed < 2; ++seed) {
    const Assembly a = run_trace(ch.system, random_run(ch.system, seed, 800));
    CHECK_FALSE(a.contains({x, 4, 2}));
  }
}

TEST_CASE("scenario: pumping the arm") {
  for (int k = 1; k <= 3; ++k) {
    const ScenarioResult r = scenario_pump_arm(k);
    CAPTURE(k);
    for (const auto& [key, v] : r.assertions) {
      CAPTURE(key);
      CHECK(v);
    }
    CHECK(r.values.at("n") == 7 + k);
    CHECK(r.values.at("pumpedCrashRow") == r.values.at("directCrashRow"));
  }
}
