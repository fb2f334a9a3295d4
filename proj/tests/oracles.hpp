#pragma once

// Independent reference implementations and random instance generators
// shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "tam/assembly.hpp"
#include "tam/dynamics.hpp"
#include "tam/system.hpp"
#include "tam/window_movie.hpp"

namespace oracle {

using tam::Assembly;
using tam::Direction;
using tam::Glue;
using tam::Point;
using tam::TileSet;
using tam::TileType;

inline std::vector<Point> neighbours(const Point& p, int dim) {
  std::vector<Point> out{{p.x - 1, p.y, p.z}, {p.x + 1, p.y, p.z}, {p.x, p.y - 1, p.z}, {p.x, p.y + 1, p.z}};
  if (dim == 3) {
    out.push_back({p.x, p.y, p.z - 1});
    out.push_back({p.x, p.y, p.z + 1});
  }
  return out;
}

// Glue presented by the tile at `p` towards `q` (unit neighbours).
inline Glue facing(const TileType& t, const Point& p, const Point& q) {
  if (q.x > p.x) return t.glues[5];
  if (q.x < p.x) return t.glues[0];
  if (q.y > p.y) return t.glues[4];
  if (q.y < p.y) return t.glues[1];
  if (q.z > p.z) return t.glues[3];
  return t.glues[2];
}

inline int bond(const TileSet& tiles, const Assembly& a, const Point& p, const Point& q) {
  const auto tp = a.at(p), tq = a.at(q);
  if (!tp || !tq) return 0;
  const Glue gp = facing(tiles[*tp], p, q), gq = facing(tiles[*tq], q, p);
  return (gp.strength > 0 && gp.label == gq.label && gp.strength == gq.strength) ? gp.strength : 0;
}

// Stable iff every split into two non-empty parts cuts at least tau.
inline bool brute_force_stable(const Assembly& a, const TileSet& tiles, int tau) {
  std::vector<Point> cells;
  for (const auto& [p, _] : a.placements()) cells.push_back(p);
  const std::size_t n = cells.size();
  if (n <= 1) return true;
  for (unsigned long mask = 1; mask < (1ul << (n - 1)); ++mask) {
    long long cut = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool si = i < n - 1 && (mask >> i & 1), sj = j < n - 1 && (mask >> j & 1);
        if (si != sj && tam::adjacent(cells[i], cells[j])) cut += bond(tiles, a, cells[i], cells[j]);
      }
    if (cut < tau) return false;
  }
  return true;
}

// Empty components inside the bounding box that never step outside it.
inline std::vector<std::set<Point>> enclosed_regions(const Assembly& a) {
  std::vector<std::set<Point>> out;
  if (a.empty()) return out;
  const int dim = a.dimension();
  Point lo = a.placements().begin()->first, hi = lo;
  for (const auto& [p, _] : a.placements()) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  auto in_box = [&](const Point& p) {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
  };
  std::set<Point> seen;
  for (int z = lo.z; z <= hi.z; ++z)
    for (int y = lo.y; y <= hi.y; ++y)
      for (int x = lo.x; x <= hi.x; ++x) {
        const Point start{x, y, z};
        if (a.contains(start) || seen.count(start)) continue;
        std::set<Point> comp{start};
        std::deque<Point> queue{start};
        seen.insert(start);
        bool escapes = false;
        while (!queue.empty()) {
          const Point p = queue.front();
          queue.pop_front();
          for (const Point& q : neighbours(p, dim)) {
            if (a.contains(q)) continue;
            if (!in_box(q)) {
              escapes = true;
              continue;
            }
            if (seen.insert(q).second) {
              comp.insert(q);
              queue.push_back(q);
            }
          }
        }
        if (!escapes) out.push_back(std::move(comp));
      }
  std::sort(out.begin(), out.end());
  return out;
}

// Random connected polyomino of `n` cells grown from the origin.
inline std::vector<Point> random_polyomino(std::mt19937_64& rng, std::size_t n, int dim) {
  std::vector<Point> cells{Point{}};
  std::set<Point> have{Point{}};
  while (cells.size() < n) {
    const Point base = cells[rng() % cells.size()];
    const auto ns = neighbours(base, dim);
    const Point q = ns[rng() % ns.size()];
    if (have.insert(q).second) cells.push_back(q);
  }
  return cells;
}

// One tile type per cell with glues drawn from {a, b, c} x {1, 2} or null;
// abutting sides agree with probability `agree`.
struct RandomAssembly {
  TileSet tiles;
  Assembly assembly;
};

inline RandomAssembly random_glued_assembly(std::mt19937_64& rng, std::size_t n, int dim, double agree = 0.7) {
  const auto cells = random_polyomino(rng, n, dim);
  std::map<Point, std::size_t> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
  std::vector<TileType> types(cells.size());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_glue = [&]() -> Glue {
    if (rng() % 4 == 0) return {};
    return {std::string(1, static_cast<char>('a' + rng() % 3)), static_cast<int>(1 + rng() % 2)};
  };
  for (std::size_t i = 0; i < cells.size(); ++i) types[i].id = types[i].label = "t" + std::to_string(i);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (Direction d : tam::directions(dim)) {
      const Point q = cells[i] + tam::unit(d);
      auto it = index.find(q);
      if (it != index.end() && it->second < i) continue;
      const Glue g = random_glue();
      types[i].glue(d) = g;
      if (it != index.end()) types[it->second].glue(tam::opposite(d)) = unit(rng) < agree ? g : random_glue();
    }
  RandomAssembly out{TileSet(dim, types), Assembly(dim)};
  for (std::size_t i = 0; i < cells.size(); ++i) out.assembly.place(cells[i], static_cast<tam::TileIndex>(i));
  return out;
}

inline Assembly random_polyomino_assembly(std::mt19937_64& rng, std::size_t n, int dim) {
  Assembly a(dim);
  for (const Point& p : random_polyomino(rng, n, dim)) a.place(p, 0);
  return a;
}

// Scattered cells (not necessarily connected) in a cube of side `side`.
inline Assembly random_configuration(std::mt19937_64& rng, std::size_t n, int dim, int side) {
  Assembly a(dim);
  std::uniform_int_distribution<int> coord(0, side - 1);
  const std::size_t cells = static_cast<std::size_t>(side) * side * (dim == 3 ? side : 1);
  n = std::min(n, cells);
  while (a.size() < n) a.place({coord(rng), coord(rng), dim == 3 ? coord(rng) : 0}, 0);
  return a;
}

}  // namespace oracle
