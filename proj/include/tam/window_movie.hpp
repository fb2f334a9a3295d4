#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "tam/dynamics.hpp"

namespace tam {

// A cut-set of lattice edges splitting the grid into an inside region and
// an outside region. Box windows cut exactly the boundary of an axis-aligned
// box of cells; explicit windows list their edges.
class Window {
 public:
  using Edge = std::pair<Point, Point>;  // normalized so first < second

  static Window box(const Point& min, const Point& max, int dimension);
  // Throws Error(InvalidWindow) unless removing the edges leaves exactly two
  // regions with every edge separating them.
  static Window from_edges(const std::vector<Edge>& edges, int dimension);

  int dimension() const { return dimension_; }
  bool is_box() const { return box_.has_value(); }
  const std::optional<Box>& box_cells() const { return box_; }
  const std::set<Edge>& edges() const { return edges_; }
  // Minimum endpoint over all edges.
  Point anchor() const;

  bool crosses(const Point& p, const Point& q) const;
  bool inside(const Point& p) const;
  Window translated(const Point& c) const;

  friend bool operator==(const Window& a, const Window& b) {
    return a.dimension_ == b.dimension_ && a.edges_ == b.edges_;
  }

 private:
  int dimension_ = 2;
  std::optional<Box> box_;
  std::set<Edge> edges_;
  std::set<Point> inside_;  // explicit windows only
};

struct MovieEntry {
  Point from;  // cell whose tile presents the glue
  Point to;    // neighbor across the window
  Glue glue;
  friend bool operator==(const MovieEntry&, const MovieEntry&) = default;
};

struct WindowMovie {
  std::vector<MovieEntry> entries;
  Point anchor;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  WindowMovie translated(const Point& c) const;
};

// Seed glues come first (seed cells in point order), then one block of
// entries per trace step. Only positive-strength glues are recorded.
// Throws Error(InvalidTrace) if the trace does not replay.
WindowMovie extract_movie(const TileSystem& system, const AssemblyTrace& trace, const Window& window,
                          std::optional<bool> diffusion = std::nullopt);

// True iff m2 translated by -c equals m1 entry for entry.
bool movies_equal(const WindowMovie& m1, const WindowMovie& m2, const Point& c);

WindowMovie bond_forming_submovie(const WindowMovie& movie, const Assembly& final_assembly,
                                  const TileSet& tiles);

enum class SpliceMode { Full, BondForming };

struct SpliceOptions {
  SpliceMode mode = SpliceMode::Full;
  // Enforce the system's diffusion rule on emitted steps.
  bool strict = false;
};

// Merges trace A (left of `window`) with trace B (right of window + c,
// shifted back by c). The left side is the side holding the seed.
AssemblyTrace splice(const TileSystem& system, const AssemblyTrace& a, const AssemblyTrace& b,
                     const Window& window, const Point& c, const SpliceOptions& options = {});

// Expected result of splice: a's seed-side half joined with b's far half
// shifted by -c.
Assembly splice_target(const TileSystem& system, const AssemblyTrace& a, const AssemblyTrace& b,
                       const Window& window, const Point& c);

struct MatchingWindows {
  Window first;
  Window second;
  Point c;
};

// Tries template + t for every translation t, returning the first pair
// (by index i < j) whose non-empty movies agree under c = t_j - t_i.
std::optional<MatchingWindows> find_matching_window_pair(const TileSystem& system,
                                                         const AssemblyTrace& trace,
                                                         const Window& window_template,
                                                         const std::vector<Point>& translations,
                                                         unsigned threads = 1);

struct PumpOptions {
  std::optional<std::size_t> repetitions;  // nullopt means until blocked
  std::size_t max_iterations = 1000;
  bool strict = false;
};

struct PumpResult {
  AssemblyTrace trace;
  std::size_t completed = 0;  // iterations applied
  bool blocked = false;
};

// w2 = w1 + c. Iteration i splices the current trace over w2 + (i-1)c with
// the original trace over w1, i.e. translation -i*c. Once a splice is
// obstructed by tiles already present (movie mismatch, invalid step, or a
// tile that would be replaced), until-blocked mode keeps appending the far
// side of w1 shifted by i*c and stops at the first step that cannot attach.
PumpResult pump(const TileSystem& system, const AssemblyTrace& trace, const Window& w1,
                const Point& c, const PumpOptions& options = {});

}  // namespace tam
