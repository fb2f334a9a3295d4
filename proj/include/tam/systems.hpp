#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tam/simulation.hpp"
#include "tam/window_movie.hpp"

namespace tam {

// Seed S with north glue a/1, tiles A and B with south glue a/1, tau 1.
TileSystem gen_undirected_ab(ModelVariant variant = {});

struct CounterLayout {
  int n = 0;      // counter height in rows
  int msb_x = 0;  // leftmost counter column
  int arm_x = 0;  // downward column, four tiles left of the counter
  int cap_y = 0;  // n + 1
  Point red;      // cooperative red tile location
};

struct BlockingCounters {
  TileSystem system;
  int bits = 0;
  int planter_end = 0;  // last planter column
  std::vector<CounterLayout> counters;
  TileIndex column_tile = 0;
  TileIndex red_tile = 0;
};

// Directed aTAM system (tau 2) counting n = 8 .. 8+k-1.
BlockingCounters gen_blocking_counters(int k);

// PaTAM frame with a periodic west wall spawning arms every 4 rows.
TileSystem gen_rectangle_arms();

struct ChamberLayout {
  int h = 0;
  Point outer_center;   // base center of the outer chamber
  Point inner_center;   // base center of the inner chamber
  Point ceiling_hole;
  int tunnel_mid_x = 0;
  std::vector<Point> shell;  // hard-coded cells in attachment-tree order
};

struct Chambers {
  TileSystem system;
  ChamberLayout layout;
  TileIndex pillar_tile = 0;
};

// SaTAM system: two 9x9-based chambers joined by a hollow 3x3 tunnel, the
// outer one with a one-tile ceiling opening, and a pillar in each.
Chambers gen_chambers(int h);

struct ScenarioResult {
  std::string name;
  TileSystem system;
  AssemblyTrace trace;
  std::vector<std::pair<std::string, std::size_t>> checkpoints;  // name -> trace length
  std::vector<std::pair<std::string, bool>> assertions;
  std::map<std::string, long long> values;

  bool assertion(const std::string& key) const;
  bool all_hold() const;
};

struct RectangleParams {
  int south_length = 8;  // wall tiles between the seed and the south-east corner
  int arm_count = 3;     // east wall height is 4 * arm_count + 2
};

ScenarioResult scenario_seal_rectangle(const RectangleParams& params = {});
ScenarioResult scenario_plug_chambers(int h);
// Throws Error(NoMatchingWindow) when the column prefix is too short.
ScenarioResult scenario_pump_arm(int k, int prefix = 3);

// Copies a 2D system into z = 0 of 3D space with null vertical glues.
TileSystem embed_2d_in_3d(const TileSystem& system, std::optional<bool> diffusion = std::nullopt);

// Small fixtures shared by tests, the acceptance suite and the CLI.
namespace fixtures {

// One tile type with east/west glue r/1; grows both ways from the origin.
TileSystem ribbon();
// Row of `length` distinct tiles growing east from a seed, tau 1.
TileSystem directed_row(int length = 5);
// 8 tiles around (1,1) placed by a fixed trace; the centre accepts tile X.
struct Ring {
  TileSystem system;
  AssemblyTrace trace;
  Point centre;
};
Ring ring(bool diffusion);

struct NamedSetup {
  std::string name;
  SimulationSetup setup;
  CheckKind target;  // the check this fixture is built to break
};
std::vector<NamedSetup> identity_setups();
std::vector<NamedSetup> broken_setups();

}  // namespace fixtures

}  // namespace tam
