#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tam/geometry.hpp"
#include "tam/tile.hpp"

namespace tam {

// Sparse placement map Point -> tile index. Also used for configurations
// (possibly empty or disconnected); connectivity is checked where required.
class Assembly {
 public:
  explicit Assembly(int dimension = 2) : dimension_(dimension) {}

  int dimension() const { return dimension_; }
  bool empty() const { return cells_.empty(); }
  std::size_t size() const { return cells_.size(); }

  std::optional<TileIndex> at(const Point& p) const;
  bool contains(const Point& p) const { return cells_.count(p) != 0; }
  const std::map<Point, TileIndex>& placements() const { return cells_; }

  // Overwrites nothing: returns false when `p` is already occupied.
  bool place(const Point& p, TileIndex tile);
  void erase(const Point& p) { cells_.erase(p); }

  Assembly translated(const Point& offset) const;
  Box bounds() const;  // requires !empty()
  bool connected() const;

  // Placements sorted by coordinate tuple, "x,y[,z]:tile;" per cell.
  std::string canonical_key() const;
  std::string domain_key() const;

  friend bool operator==(const Assembly& a, const Assembly& b) {
    return a.dimension_ == b.dimension_ && a.cells_ == b.cells_;
  }
  friend bool operator<(const Assembly& a, const Assembly& b) {
    return a.cells_ < b.cells_;
  }

 private:
  int dimension_;
  std::map<Point, TileIndex> cells_;
};

struct BindingEdge {
  Point a;  // a < b
  Point b;
  int weight = 0;
  friend auto operator<=>(const BindingEdge&, const BindingEdge&) = default;
};

struct BindingGraph {
  std::vector<Point> vertices;  // sorted
  std::vector<BindingEdge> edges;  // sorted, one entry per unordered pair

  int weight(const Point& p, const Point& q) const;
};

// Throws Error(UnknownTile) if a placement index is outside the tile set.
BindingGraph binding_graph(const Assembly& assembly, const TileSet& tiles);

// Global minimum cut weight of a weighted undirected graph on vertices
// 0..n-1 (maximum-adjacency search / Stoer-Wagner). Zero when disconnected,
// and for n < 2 returns std::nullopt (no cut exists).
std::optional<long long> global_min_cut(std::size_t n,
                                        const std::vector<std::array<long long, 3>>& edges);

bool is_tau_stable(const Assembly& assembly, const TileSet& tiles, int tau);

bool is_subassembly(const Assembly& a, const Assembly& b);

std::set<Point> shape(const Assembly& assembly);

}  // namespace tam
