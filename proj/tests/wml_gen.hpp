#pragma once

// Random (system, trace, trace, box window, c) instances for the window
// movie properties, plus the property check itself.

#include <optional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "tam/error.hpp"

namespace oracle {

struct WmlInstance {
  tam::TileSystem system;
  tam::AssemblyTrace a;
  tam::AssemblyTrace b;
  tam::Point min, max;  // box of the first window
  tam::Point c;
};

inline tam::TileSystem make_system(std::vector<TileType> tiles, int dim, int tau) {
  tam::TileSystem sys;
  sys.name = "random";
  sys.tiles = TileSet(dim, std::move(tiles));
  sys.temperature = tau;
  sys.variant = {dim, false};
  sys.seed = Assembly(dim);
  sys.seed.place(Point{}, 0);
  return sys;
}

// A periodic row growing east with vertical decorations of random height
// and optional sideways bridges between level-one decorations.
inline tam::TileSystem comb_system(std::mt19937_64& rng) {
  const int period = 1 + static_cast<int>(rng() % 3);
  const int height = 1 + static_cast<int>(rng() % 3);
  const bool bridges = rng() % 2;
  auto g = [](const std::string& l) { return Glue{l, 1}; };
  std::vector<TileType> tiles;
  auto tile = [&](std::string id, std::initializer_list<std::pair<Direction, Glue>> glues) {
    tiles.push_back(tam::make_tile(std::move(id), glues));
    return &tiles.back();
  };
  tile("Z", {{Direction::E, g("r1")}});
  for (int i = 0; i < period; ++i) {
    const std::string s = std::to_string(i);
    tile("R" + s, {{Direction::W, g("r" + std::to_string(i == 0 ? period : i))},
                   {Direction::E, g("r" + std::to_string(i + 1 == period ? period : i + 1))},
                   {Direction::N, g("u" + s + "_1")},
                   {Direction::S, g("d" + s + "_1")}});
    for (int k = 1; k <= height; ++k) {
      const std::string lvl = s + "_" + std::to_string(k), next = s + "_" + std::to_string(k + 1);
      for (const char* side : {"u", "d"}) {
        const bool up = side[0] == 'u';
        const Direction in = up ? Direction::S : Direction::N, outd = up ? Direction::N : Direction::S;
        TileType* stop = tile(std::string(side) + "stop" + lvl, {{in, g(side + lvl)}});
        if (bridges && k == 1) {
          stop->glue(Direction::E) = g(std::string("h") + side);
          stop->glue(Direction::W) = g(std::string("h") + side);
        }
        if (k < height) tile(std::string(side) + "go" + lvl, {{in, g(side + lvl)}, {outd, g(side + next)}});
      }
    }
  }
  return make_system(std::move(tiles), 2, 1);
}

inline tam::TileSystem random_small_system(std::mt19937_64& rng, int dim) {
  const std::size_t n = 2 + rng() % 4;
  std::vector<TileType> tiles(n);
  for (std::size_t i = 0; i < n; ++i) {
    tiles[i].id = tiles[i].label = "k" + std::to_string(i);
    for (Direction d : tam::directions(dim))
      if (rng() % 3 != 0) tiles[i].glue(d) = Glue{std::string(1, static_cast<char>('a' + rng() % 3)), 1};
  }
  return make_system(std::move(tiles), dim, 1);
}

inline tam::WindowMovie movie_at(const tam::TileSystem& sys, const tam::AssemblyTrace& t, const Point& lo,
                                 const Point& hi) {
  return tam::extract_movie(sys, t, tam::Window::box(lo, hi, sys.variant.dimension));
}

// Draws candidate instances until one has equal window movies (or gives up).
// family 0: comb with c != 0; 1: random 2D, c = 0; 2: random 3D, c = 0.
inline std::optional<WmlInstance> random_wml_instance(std::mt19937_64& rng, int family, std::size_t min_entries = 1,
                                                     int attempts = 500) {
  for (int attempt = 0; attempt < attempts; ++attempt) {
    WmlInstance inst;
    if (family == 0) {
      inst.system = comb_system(rng);
      const int reach = 4 + static_cast<int>(rng() % 5);
      const int a_end = 1 + static_cast<int>(rng() % 3);
      inst.min = {-1, -5, 0};
      inst.max = {a_end, 5, 0};
      int period = 0;
      for (const auto& t : inst.system.tiles.tiles()) period += t.id[0] == 'R';
      inst.c = {period * (1 + static_cast<int>(rng() % 2)), 0, 0};
      inst.a = tam::random_run(inst.system, rng(), 6 * reach);
      inst.b = tam::random_run(inst.system, rng(), 6 * reach + 6 * inst.c.x);
    } else {
      const int dim = family == 1 ? 2 : 3;
      inst.system = random_small_system(rng, dim);
      const int r = 1 + static_cast<int>(rng() % 2);
      inst.min = {-r, -r, dim == 3 ? -r : 0};
      inst.max = {r, r, dim == 3 ? r : 0};
      inst.c = {};
      inst.a = tam::random_run(inst.system, rng(), 10 + rng() % 30);
      inst.b = tam::random_run(inst.system, rng(), 10 + rng() % 30);
    }
    const auto ma = movie_at(inst.system, inst.a, inst.min, inst.max);
    const auto mb = movie_at(inst.system, inst.b, inst.min + inst.c, inst.max + inst.c);
    if (ma.size() >= min_entries && tam::movies_equal(ma, mb, inst.c)) return inst;
  }
  return std::nullopt;
}

inline bool in_box(const Point& p, const Point& lo, const Point& hi) {
  return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
}

// left(a, box) joined with right(b, box + c) shifted by -c.
inline Assembly expected_splice(const tam::TileSystem& sys, const tam::AssemblyTrace& a, const tam::AssemblyTrace& b,
                                const Point& lo, const Point& hi, const Point& c) {
  const Assembly fa = tam::run_trace(sys, a, false), fb = tam::run_trace(sys, b, false);
  Assembly out(sys.variant.dimension);
  for (const auto& [p, t] : fa.placements())
    if (in_box(p, lo, hi)) out.place(p, t);
  for (const auto& [p, t] : fb.placements())
    if (!in_box(p, lo + c, hi + c)) out.place(p - c, t);
  return out;
}

// Empty string when the splice properties hold for the instance.
inline std::string check_wml(const WmlInstance& inst) {
  const tam::TileSystem& sys = inst.system;
  const int dim = sys.variant.dimension;
  const tam::Window w1 = tam::Window::box(inst.min, inst.max, dim);
  const tam::Window w2 = w1.translated(inst.c);
  try {
    const auto g = tam::splice(sys, inst.a, inst.b, w1, inst.c);
    const Assembly got = tam::run_trace(sys, g, false);
    if (!(got == expected_splice(sys, inst.a, inst.b, inst.min, inst.max, inst.c))) return "splice result differs";
    const auto sym = tam::splice(sys, inst.b, inst.a, w2, Point{} - inst.c);
    const Assembly got_sym = tam::run_trace(sys, sym, false);
    if (!(got_sym == expected_splice(sys, inst.b, inst.a, inst.min + inst.c, inst.max + inst.c, Point{} - inst.c)))
      return "symmetric splice result differs";
    const auto fa = tam::run_trace(sys, inst.a, false), fb = tam::run_trace(sys, inst.b, false);
    const auto sa = tam::bond_forming_submovie(tam::extract_movie(sys, inst.a, w1), fa, sys.tiles);
    const auto sb = tam::bond_forming_submovie(tam::extract_movie(sys, inst.b, w2), fb, sys.tiles);
    if (tam::movies_equal(sa, sb, inst.c)) {
      const auto bf = tam::splice(sys, inst.a, inst.b, w1, inst.c, {tam::SpliceMode::BondForming, false});
      if (!(tam::run_trace(sys, bf, false) == expected_splice(sys, inst.a, inst.b, inst.min, inst.max, inst.c)))
        return "bond-forming splice result differs";
    }
  } catch (const tam::Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace oracle
