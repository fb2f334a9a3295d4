#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tam/error.hpp"
#include "tam/system.hpp"

namespace tam {

struct Placement {
  Point location;
  TileIndex tile = 0;
  friend auto operator<=>(const Placement&, const Placement&) = default;
};

// Ordered single-tile attachments replayed from the system's seed.
struct AssemblyTrace {
  std::vector<Placement> steps;

  std::size_t size() const { return steps.size(); }
  bool empty() const { return steps.empty(); }
  AssemblyTrace translated(const Point& offset) const;
  AssemblyTrace prefix(std::size_t n) const;
};

// Connected components of the lattice complement that do not reach the
// boundary of the bounding box inflated by one. Sorted, pairwise disjoint.
std::vector<std::set<Point>> constrained_regions(const Assembly& assembly);

// Cells of the inflated bounding box that lie on the outside component.
class OutsideMap {
 public:
  explicit OutsideMap(const Assembly& assembly);
  // Points beyond the inflated box are always outside.
  bool outside(const Point& p) const;

 private:
  Box box_;
  std::vector<bool> outside_;
  bool empty_ = true;
};

// Sum of matching positive-strength glue strengths `tile` would get at `p`.
int attachment_strength(const Assembly& assembly, const TileSet& tiles, const Point& p,
                        TileIndex tile);

// Why a placement cannot attach, or nullopt when it can. `diffusion`
// overrides the system variant's diffusion flag when given.
std::optional<ErrorKind> attach_error(const Assembly& assembly, const Placement& placement,
                                      const TileSystem& system,
                                      std::optional<bool> diffusion = std::nullopt);

// Canonically ordered (location, then tile id) frontier.
std::vector<Placement> frontier(const Assembly& assembly, const TileSystem& system);

Assembly attach(const Assembly& assembly, const Placement& placement, const TileSystem& system);

// Replays the trace from the seed; throws Error(InvalidStep) with the
// 0-based failing step index and the attach error as cause.
Assembly run_trace(const TileSystem& system, const AssemblyTrace& trace,
                   std::optional<bool> diffusion = std::nullopt);

// Uniform draws from the canonical frontier with std::mt19937_64 seeded by
// `rng_seed`; the choice is `engine() % frontier.size()`.
AssemblyTrace random_run(const TileSystem& system, std::uint64_t rng_seed, std::size_t max_steps);

struct ExplorationOptions {
  std::size_t max_tiles = 5000;
  std::size_t max_states = 1'000'000;
  unsigned threads = 1;
};

struct ExplorationEdge {
  std::size_t from;
  std::size_t to;
  Placement placement;
};

struct ExplorationResult {
  std::vector<Assembly> producibles;  // sorted by canonical key
  std::vector<std::size_t> terminals;  // indices into producibles, sorted
  std::vector<ExplorationEdge> edges;  // one-step productions, sorted
  std::vector<std::string> keys;       // canonical keys, parallel to producibles
  std::vector<std::optional<std::size_t>> parent_edge;  // BFS tree, index into edges
  bool truncated = false;
  std::size_t size_bound = 0;
  std::size_t states_visited = 0;

  std::optional<std::size_t> find(const Assembly& a) const;
  // Assembly sequence from the seed to producible `i` (shortest path).
  AssemblyTrace trace_to(std::size_t i) const;
  std::vector<Assembly> terminal_assemblies() const;
};

// Breadth-first closure of attach from the seed, deduplicated by canonical
// key. Throws Error(StateBudgetExceeded) past options.max_states.
ExplorationResult explore_producibles(const TileSystem& system,
                                      const ExplorationOptions& options = {});

struct DirectednessVerdict {
  enum class Kind { Directed, Undirected, Unknown };
  Kind kind = Kind::Unknown;
  // Undirected: two distinct terminals, or two equal-domain producibles that
  // disagree at some point when `conflict` is set.
  std::vector<Assembly> witnesses;
  bool conflict = false;
  std::size_t terminal_count = 0;
};

std::string_view to_string(DirectednessVerdict::Kind kind);

DirectednessVerdict check_directed(const TileSystem& system, const ExplorationOptions& options = {});
DirectednessVerdict check_directed(const ExplorationResult& exploration);

}  // namespace tam
