#include <doctest.h>

#include "wml_gen.hpp"
#include "tam/error.hpp"
#include "tam/systems.hpp"

using namespace tam;

namespace {

ErrorKind attach_kind(const Assembly& a, const Placement& p, const TileSystem& sys) {
  const auto err = attach_error(a, p, sys);
  REQUIRE(err.has_value());
  return *err;
}

}  // namespace

TEST_CASE("the A/B seed offers two choices at one cell") {
  const TileSystem ab = gen_undirected_ab();
  const auto f = frontier(ab.seed, ab);
  REQUIRE(f.size() == 2);
  CHECK(f[0].location == Point{0, 1, 0});
  CHECK(f[1].location == Point{0, 1, 0});
  const Assembly a = attach(ab.seed, f[0], ab);
  CHECK(frontier(a, ab).empty());
}

TEST_CASE("attach errors") {
  const TileSystem ab = gen_undirected_ab();
  const TileIndex A = ab.tiles.index_of("A");
  CHECK(attach_kind(ab.seed, {{0, 0, 0}, A}, ab) == ErrorKind::Occupied);
  CHECK(attach_kind(ab.seed, {{0, 1, 0}, 99}, ab) == ErrorKind::UnknownTile);
  CHECK(attach_kind(ab.seed, {{0, 1, 1}, A}, ab) == ErrorKind::DimensionMismatch);
  CHECK(attach_kind(ab.seed, {{1, 0, 0}, A}, ab) == ErrorKind::InsufficientStrength);
  TileSystem hot = ab;
  hot.temperature = 2;
  CHECK(attach_kind(ab.seed, {{0, 1, 0}, A}, hot) == ErrorKind::InsufficientStrength);
  CHECK_THROWS_AS(attach(ab.seed, {{0, 0, 0}, A}, ab), Error);
}

TEST_CASE("enclosed cells are blocked only under diffusion") {
  for (bool diffusion : {false, true}) {
    const auto ring = fixtures::ring(diffusion);
    const TileIndex X = ring.system.tiles.index_of("X");
    const Assembly before = run_trace(ring.system, ring.trace.prefix(ring.trace.size() - 1));
    CHECK_FALSE(attach_error(before, {ring.centre, X}, ring.system).has_value());
    const Assembly closed = run_trace(ring.system, ring.trace);
    const auto regions = constrained_regions(closed);
    REQUIRE(regions.size() == 1);
    CHECK(regions[0] == std::set<Point>{ring.centre});
    const auto err = attach_error(closed, {ring.centre, X}, ring.system);
    CHECK(err.has_value() == diffusion);
    if (diffusion) CHECK(*err == ErrorKind::ConstrainedLocation);
    CHECK(attach_error(closed, {ring.centre, X}, ring.system, !diffusion).has_value() == !diffusion);
  }
}

TEST_CASE("run_trace reports the failing step") {
  const TileSystem ab = gen_undirected_ab();
  AssemblyTrace t;
  t.steps = {{{0, 1, 0}, ab.tiles.index_of("A")}, {{0, 1, 0}, ab.tiles.index_of("B")}};
  try {
    run_trace(ab, t);
    FAIL("expected InvalidStep");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidStep);
    CHECK(e.index() == 1u);
    CHECK(e.cause() == ErrorKind::Occupied);
  }
}

TEST_CASE("random runs are reproducible and replayable") {
  const auto sys = fixtures::ribbon();
  const auto t1 = random_run(sys, 42, 25), t2 = random_run(sys, 42, 25);
  CHECK(t1.steps == t2.steps);
  CHECK(t1.size() == 25);
  CHECK(run_trace(sys, t1).size() == 26);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto s = oracle::random_small_system(rng, 2 + i % 2);
    const auto t = random_run(s, rng(), 30);
    CHECK_NOTHROW(run_trace(s, t));
  }
}

TEST_CASE("constrained regions agree with an independent flood fill") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const int dim = i % 5 == 0 ? 3 : 2;
    const Assembly a = i % 2 ? oracle::random_configuration(rng, 10 + rng() % 60, dim, dim == 3 ? 5 : 9)
                             : oracle::random_polyomino_assembly(rng, 5 + rng() % 80, dim);
    CAPTURE(i);
    CHECK(constrained_regions(a) == oracle::enclosed_regions(a));
  }
}

TEST_CASE("exploration of the A/B system") {
  const ExplorationResult r = explore_producibles(gen_undirected_ab());
  CHECK(r.producibles.size() == 3);
  CHECK(r.terminals.size() == 2);
  CHECK(r.edges.size() == 2);
  CHECK_FALSE(r.truncated);
  for (std::size_t i = 0; i < r.producibles.size(); ++i) {
    CHECK(run_trace(gen_undirected_ab(), r.trace_to(i)) == r.producibles[i]);
    CHECK(r.find(r.producibles[i]) == i);
  }
}

TEST_CASE("exploration invariants on random systems") {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 40; ++i) {
    const auto sys = oracle::random_small_system(rng, 2);
    ExplorationOptions opt;
    opt.max_tiles = 5;
    const auto r = explore_producibles(sys, opt);
    for (const auto& a : r.producibles) {
      CHECK(a.connected());
      CHECK(is_tau_stable(a, sys.tiles, sys.temperature));
    }
    for (const auto& e : r.edges) {
      CHECK(r.producibles[e.to].size() == r.producibles[e.from].size() + 1);
      CHECK(attach(r.producibles[e.from], e.placement, sys) == r.producibles[e.to]);
    }
    for (std::size_t t : r.terminals) CHECK(frontier(r.producibles[t], sys).empty());
  }
}

TEST_CASE("growth past the size bound marks the result truncated") {
  ExplorationOptions opt;
  opt.max_tiles = 6;
  const auto r = explore_producibles(fixtures::ribbon(), opt);
  CHECK(r.truncated);
  CHECK(r.producibles.size() == 21);
  CHECK(r.terminals.empty());
  CHECK(check_directed(r).kind == DirectednessVerdict::Kind::Unknown);
  opt.max_states = 3;
  CHECK_THROWS_WITH_AS(explore_producibles(fixtures::ribbon(), opt), doctest::Contains("StateBudgetExceeded"), Error);
}

TEST_CASE("directedness verdicts") {
  const auto row = check_directed(fixtures::directed_row(5));
  CHECK(row.kind == DirectednessVerdict::Kind::Directed);
  CHECK(row.terminal_count == 1);
  for (ModelVariant v : {ModelVariant{2, false}, ModelVariant{2, true}, ModelVariant{3, false}, ModelVariant{3, true}}) {
    const auto ab = check_directed(gen_undirected_ab(v));
    CHECK(ab.kind == DirectednessVerdict::Kind::Undirected);
    CHECK(ab.terminal_count == 2);
    REQUIRE(ab.witnesses.size() == 2);
    CHECK_FALSE(ab.witnesses[0] == ab.witnesses[1]);
  }
}

TEST_CASE("exploration is independent of the thread count") {
  const std::vector<TileSystem> systems{gen_undirected_ab(), fixtures::directed_row(5), fixtures::ring(true).system,
                                        fixtures::ring(false).system};
  for (const auto& sys : systems) {
    ExplorationOptions opt;
    opt.max_tiles = 12;
    const auto base = explore_producibles(sys, opt);
    for (unsigned threads : {2u, 3u, 8u}) {
      opt.threads = threads;
      const auto r = explore_producibles(sys, opt);
      CHECK(r.keys == base.keys);
      CHECK(r.terminals == base.terminals);
      CHECK(r.edges.size() == base.edges.size());
    }
  }
}
