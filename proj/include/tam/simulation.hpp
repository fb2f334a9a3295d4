#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tam/dynamics.hpp"

namespace tam {

// Partial map from offsets in [0,m)^d to simulator tiles.
struct MBlock {
  int scale = 1;
  std::map<Point, TileIndex> cells;
  bool empty() const { return cells.empty(); }
};

struct ResolverRule {
  std::vector<std::pair<Point, TileIndex>> pattern;  // offsets and simulator tiles
  TileIndex output = 0;                              // simulated tile
};

// Ordered rules: a block resolves to the output of the first rule whose
// pattern it contains.
struct Resolver {
  int scale = 1;
  std::vector<ResolverRule> rules;
};

struct SimulationSetup {
  TileSystem simulator;  // S
  TileSystem simulated;  // T
  int scale = 1;
  Resolver resolver;
};

// Throws Error(InvalidSetup) on scale or dimension mismatches, empty
// patterns, offsets outside the block, or unknown tiles.
void validate_setup(const SimulationSetup& setup);

Point macro_coordinate(const Point& p, int scale);
MBlock block_at(const Assembly& assembly, const Point& macro, int scale);
// Non-empty blocks keyed by macrotile coordinate.
std::map<Point, MBlock> blocks(const Assembly& assembly, int scale);

std::optional<TileIndex> eval_r(const Resolver& resolver, const MBlock& block);
Assembly r_star(const SimulationSetup& setup, const Assembly& assembly);

// Non-empty blocks that map to empty space with no resolved block at any
// axis offset (including itself). Vacuous with at most one non-empty block.
std::vector<Point> clean_violations(const SimulationSetup& setup, const Assembly& assembly);

enum class CheckKind { Monotonic, Clean, Productions, Follows, Models, Directedness };
inline constexpr CheckKind kAllChecks[] = {CheckKind::Monotonic, CheckKind::Clean,
                                           CheckKind::Productions, CheckKind::Follows,
                                           CheckKind::Models, CheckKind::Directedness};
std::string_view to_string(CheckKind kind);
std::optional<CheckKind> check_kind_from_string(std::string_view name);

enum class Verdict { Pass, Fail, Unknown };
std::string_view to_string(Verdict v);

struct Witness {
  bool simulator = true;  // which system the trace replays in
  AssemblyTrace trace;
};

struct CheckResult {
  CheckKind check;
  Verdict verdict = Verdict::Unknown;
  std::string detail;
  std::vector<Witness> witnesses;
};

struct SimCheckOptions {
  ExplorationOptions simulator;
  ExplorationOptions simulated;
  // Candidate witness sets tried when looking for the smallest one.
  std::size_t pi_cap = 1 << 16;
  // Reachability matrices are skipped (models -> unknown) above this.
  std::size_t max_reach_states = 20000;
};

struct SimCheckReport {
  std::vector<CheckResult> results;
  std::size_t simulator_bound = 0;
  std::size_t simulated_bound = 0;

  const CheckResult* find(CheckKind kind) const;
  bool all_pass() const;
};

SimCheckReport run_checks(const SimulationSetup& setup, const std::vector<CheckKind>& checks,
                          const SimCheckOptions& options = {});
CheckResult run_check(const SimulationSetup& setup, CheckKind check, const SimCheckOptions& options = {});

// One rule per tile with the tile alone at offset 0 (scale 1).
SimulationSetup identity_setup(const TileSystem& system);

}  // namespace tam
