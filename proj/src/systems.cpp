#include "tam/systems.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace tam {

namespace {

using D = Direction;

Glue g(const std::string& label, int strength) { return Glue{label, strength}; }

TileSystem make_system(std::string name, int dim, std::vector<TileType> tiles, int tau, bool diffusion,
                       const std::vector<std::pair<Point, std::string>>& seed) {
  TileSystem sys;
  sys.name = std::move(name);
  sys.tiles = TileSet(dim, std::move(tiles));
  sys.temperature = tau;
  sys.variant = {dim, diffusion};
  sys.seed = Assembly(dim);
  for (const auto& [p, id] : seed) sys.seed.place(p, sys.tiles.index_of(id));
  return sys;
}

}  // namespace

TileSystem gen_undirected_ab(ModelVariant variant) {
  std::vector<TileType> tiles{
      make_tile("S", {{D::N, g("a", 1)}}),
      make_tile("A", {{D::S, g("a", 1)}}),
      make_tile("B", {{D::S, g("a", 1)}}),
  };
  return make_system("undirected-ab", variant.dimension, std::move(tiles), 1, variant.diffusion_restricted,
                     {{Point{}, "S"}});
}

BlockingCounters gen_blocking_counters(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidArgument, "blocking counters need k >= 1");
  BlockingCounters out;
  const int n_max = 8 + k - 1;
  int bits = 2;
  while ((1 << bits) < (n_max + 2 + 1) / 2) ++bits;
  out.bits = bits;

  auto bit = [](const std::string& col, int v) { return g(col + "bit_" + std::to_string(v), 1); };
  auto carry = [](int c) { return g("c_" + std::to_string(c), 1); };
  auto incstart = [](int v) { return g("incstart_" + std::to_string(v), 2); };
  auto retstart = [](int v) { return g("retstart_" + std::to_string(v), 2); };
  const Glue red = g("red", 1), ret = g("ret", 1), col = g("col", 2);

  std::vector<TileType> tiles;
  for (int v = 0; v < 2; ++v) {
    // Increment rows grow right to left with carry-in 1 at the low bit.
    tiles.push_back(make_tile("incL" + std::to_string(v),
                              {{D::S, incstart(v)}, {D::N, bit("l", v ^ 1)}, {D::W, carry(v)}}));
    for (int c = 0; c < 2; ++c) {
      const std::string suffix = std::to_string(v) + std::to_string(c);
      tiles.push_back(make_tile("incM" + suffix, {{D::S, bit("", v)},
                                                  {D::E, carry(c)},
                                                  {D::N, bit("", v ^ c)},
                                                  {D::W, carry(v & c)}}));
      if (v & c)
        tiles.push_back(make_tile("overflow", {{D::S, bit("m", 1)}, {D::E, carry(1)}, {D::W, g("arm1", 2)}}));
      else
        tiles.push_back(make_tile("incH" + suffix,
                                  {{D::S, bit("m", v)}, {D::E, carry(c)}, {D::N, retstart(v ^ c)}, {D::W, red}}));
    }
    // Return rows copy the value left to right.
    tiles.push_back(make_tile("retH" + std::to_string(v),
                              {{D::S, retstart(v)}, {D::N, bit("m", v)}, {D::E, ret}, {D::W, red}}));
    tiles.push_back(make_tile("retM" + std::to_string(v),
                              {{D::W, ret}, {D::S, bit("", v)}, {D::N, bit("", v)}, {D::E, ret}}));
    tiles.push_back(make_tile("retL" + std::to_string(v),
                              {{D::W, ret}, {D::S, bit("l", v)}, {D::N, incstart(v)}}));
  }
  tiles.push_back(make_tile("arm1", {{D::E, g("arm1", 2)}, {D::W, g("arm2", 2)}}));
  tiles.push_back(make_tile("arm2", {{D::E, g("arm2", 2)}, {D::W, g("arm3", 2)}}));
  tiles.push_back(make_tile("arm3", {{D::E, g("arm3", 2)}, {D::W, g("arm4", 2)}}));
  tiles.push_back(make_tile("arm4", {{D::E, g("arm4", 2)}, {D::S, col}}));
  tiles.push_back(make_tile("column", {{D::N, col}, {D::S, col}}));
  tiles.push_back(make_tile("red", {{D::S, red}, {D::E, red}}, "red"));

  // Counter layout and the values the planter presents to each counter.
  std::map<int, Glue> planter_north;
  int x0 = 6;
  for (int i = 0; i < k; ++i) {
    const int n = 8 + i;
    CounterLayout c{n, x0, x0 - 4, n + 1, Point{x0 - 1, 1, 0}};
    out.counters.push_back(c);
    const bool even = n % 2 == 0;
    const int value = even ? (1 << bits) - (n + 2) / 2 : (1 << bits) - (n + 1) / 2;
    for (int j = 0; j < bits; ++j) {
      const int v = (value >> (bits - 1 - j)) & 1;
      Glue glue;
      if (j == 0) glue = even ? bit("m", v) : retstart(v);
      else if (j == bits - 1) glue = even ? incstart(v) : bit("l", v);
      else glue = bit("", v);
      planter_north[x0 + j] = glue;
    }
    planter_north[x0 - 1] = red;
    x0 += bits + 8;
  }
  out.planter_end = out.counters.back().msb_x + bits - 1;
  for (int x = 0; x <= out.planter_end; ++x) {
    TileType t = make_tile("planter" + std::to_string(x), {});
    if (x > 0) t.glue(D::W) = g("p" + std::to_string(x), 2);
    if (x < out.planter_end) t.glue(D::E) = g("p" + std::to_string(x + 1), 2);
    if (auto it = planter_north.find(x); it != planter_north.end()) t.glue(D::N) = it->second;
    tiles.push_back(std::move(t));
  }
  out.system = make_system("blocking-counters-" + std::to_string(k), 2, std::move(tiles), 2, false,
                           {{Point{}, "planter0"}});
  out.column_tile = out.system.tiles.index_of("column");
  out.red_tile = out.system.tiles.index_of("red");
  return out;
}

TileSystem gen_rectangle_arms() {
  const Glue s = g("s", 1), e = g("e", 1), n = g("n", 1), a = g("a", 1);
  auto w = [](int i) { return g("w" + std::to_string(i), 1); };
  std::vector<TileType> tiles{
      make_tile("seed", {{D::E, s}}),
      make_tile("S", {{D::W, s}, {D::E, s}}),
      make_tile("SE", {{D::W, s}, {D::N, e}}),
      make_tile("E", {{D::S, e}, {D::N, e}}),
      make_tile("NE", {{D::S, e}, {D::W, n}}),
      make_tile("N", {{D::E, n}, {D::W, n}}),
      make_tile("NW", {{D::E, n}, {D::S, w(1)}}),
      make_tile("W1", {{D::N, w(1)}, {D::S, w(2)}}),
      make_tile("W2", {{D::N, w(2)}, {D::S, w(3)}}),
      make_tile("W3", {{D::N, w(3)}, {D::S, w(4)}}),
      make_tile("W4", {{D::N, w(4)}, {D::S, w(1)}, {D::E, a}}),
      make_tile("H", {{D::W, a}, {D::E, a}}),
  };
  return make_system("rectangle-arms", 2, std::move(tiles), 1, true, {{Point{}, "seed"}});
}

Chambers gen_chambers(int h) {
  if (h < 3) throw Error(ErrorKind::InvalidArgument, "chambers need interior height h >= 3");
  Chambers out;
  ChamberLayout& L = out.layout;
  L.h = h;
  L.outer_center = {4, 4, 0};
  L.inner_center = {18, 4, 0};
  L.ceiling_hole = {4, 4, h + 1};
  L.tunnel_mid_x = 11;

  std::set<Point> cells;
  auto chamber = [&](int x_lo, bool hole) {
    for (int x = x_lo; x < x_lo + 9; ++x)
      for (int y = 0; y < 9; ++y) {
        cells.insert({x, y, 0});
        cells.insert({x, y, h + 1});
        if (x == x_lo || x == x_lo + 8 || y == 0 || y == 8)
          for (int z = 1; z <= h; ++z) cells.insert({x, y, z});
      }
    if (hole) cells.erase({x_lo + 4, 4, h + 1});
  };
  chamber(0, true);
  chamber(14, false);
  cells.erase({8, 4, 2});
  cells.erase({14, 4, 2});
  for (int x = 9; x <= 13; ++x)
    for (int y = 3; y <= 5; ++y)
      for (int z = 1; z <= 3; ++z)
        if (!(y == 4 && z == 2)) cells.insert({x, y, z});

  // Breadth-first attachment tree from the seed corner; every tree edge gets
  // its own glue so each cell accepts exactly one tile type.
  std::map<Point, std::size_t> order;
  std::vector<std::pair<Point, std::optional<Direction>>> tree;  // cell, side facing parent
  std::vector<Point> queue{Point{}};
  order[Point{}] = 0;
  tree.push_back({Point{}, std::nullopt});
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Point p = queue[head];
    for (Direction d : directions(3)) {
      const Point q = p + unit(d);
      if (!cells.count(q) || order.count(q)) continue;
      order[q] = queue.size();
      queue.push_back(q);
      tree.push_back({q, opposite(d)});
    }
  }
  L.shell = queue;

  std::vector<TileType> tiles;
  auto name = [](const Point& p) {
    return "c" + std::to_string(p.x) + "_" + std::to_string(p.y) + "_" + std::to_string(p.z);
  };
  for (const Point& p : queue) tiles.push_back(make_tile(name(p), {}));
  for (std::size_t i = 1; i < tree.size(); ++i) {
    const auto& [q, up] = tree[i];
    const Point parent = q + unit(*up);
    const Glue glue = g("t" + std::to_string(i), 1);
    tiles[i].glue(*up) = glue;
    tiles[order[parent]].glue(opposite(*up)) = glue;
  }
  const Glue pillar = g("pillar", 1);
  tiles[order[L.outer_center]].glue(D::U) = pillar;
  tiles[order[L.inner_center]].glue(D::U) = pillar;
  tiles.push_back(make_tile("P", {{D::D, pillar}, {D::U, pillar}}, "pillar"));
  out.system = make_system("chambers-" + std::to_string(h), 3, std::move(tiles), 1, true, {{Point{}, name(Point{})}});
  out.pillar_tile = out.system.tiles.index_of("P");
  return out;
}

TileSystem embed_2d_in_3d(const TileSystem& system, std::optional<bool> diffusion) {
  if (system.variant.dimension != 2)
    throw Error(ErrorKind::NotTwoDimensional, "system '" + system.name + "' is not two-dimensional");
  TileSystem out;
  out.name = system.name + "-3d";
  out.tiles = TileSet(3, system.tiles.tiles());
  out.temperature = system.temperature;
  out.variant = {3, diffusion.value_or(system.variant.diffusion_restricted)};
  out.seed = Assembly(3);
  for (const auto& [p, t] : system.seed.placements()) out.seed.place({p.x, p.y, 0}, t);
  return out;
}

bool ScenarioResult::assertion(const std::string& key) const {
  for (const auto& [k, v] : assertions)
    if (k == key) return v;
  throw Error(ErrorKind::InvalidArgument, "no assertion named " + key);
}

bool ScenarioResult::all_hold() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const auto& a) { return a.second; });
}

namespace {

void push(AssemblyTrace& trace, const TileSystem& sys, const Point& p, const std::string& id) {
  trace.steps.push_back({p, sys.tiles.index_of(id)});
}

bool frontier_hits(const std::vector<Placement>& f, const std::function<bool(const Point&)>& where) {
  return std::any_of(f.begin(), f.end(), [&](const Placement& pl) { return where(pl.location); });
}

}  // namespace

ScenarioResult scenario_seal_rectangle(const RectangleParams& params) {
  if (params.south_length < 2 || params.arm_count < 1)
    throw Error(ErrorKind::InvalidArgument, "rectangle needs south_length >= 2 and arm_count >= 1");
  ScenarioResult r;
  r.name = "seal-rectangle";
  r.system = gen_rectangle_arms();
  const TileSystem& sys = r.system;
  const int L = params.south_length;
  const int He = 4 * params.arm_count + 2;
  AssemblyTrace& t = r.trace;

  for (int x = 1; x <= L; ++x) push(t, sys, {x, 0, 0}, "S");
  push(t, sys, {L + 1, 0, 0}, "SE");
  for (int y = 1; y <= He; ++y) push(t, sys, {L + 1, y, 0}, "E");
  push(t, sys, {L + 1, He + 1, 0}, "NE");
  for (int x = L; x >= 1; --x) push(t, sys, {x, He + 1, 0}, "N");
  push(t, sys, {0, He + 1, 0}, "NW");
  r.checkpoints.push_back({"frame", t.size()});
  auto west = [&](int y) { return "W" + std::to_string((He - y) % 4 + 1); };
  for (int y = He; y >= 3; --y) push(t, sys, {0, y, 0}, west(y));
  // Every arm stops one tile short of the east wall.
  std::vector<int> arm_rows;
  for (int y = He - 3; y >= 3; y -= 4) arm_rows.push_back(y);
  for (int y : arm_rows)
    for (int x = 1; x < L; ++x) push(t, sys, {x, y, 0}, "H");
  r.checkpoints.push_back({"arms", t.size()});
  push(t, sys, {0, 2, 0}, west(2));
  push(t, sys, {0, 1, 0}, west(1));
  r.checkpoints.push_back({"sealed", t.size()});

  auto interior = [&](const Point& p) { return p.x >= 1 && p.x <= L && p.y >= 1 && p.y <= He; };
  const Assembly sealed = run_trace(sys, t);
  const auto patam = frontier(sealed, sys);
  const TileSystem atam = sys.with_diffusion(false);
  const auto atam_frontier = frontier(run_trace(atam, t), atam);
  r.values["armCount"] = static_cast<long long>(arm_rows.size());
  r.values["atamInteriorFrontier"] =
      std::count_if(atam_frontier.begin(), atam_frontier.end(), [&](const Placement& p) { return interior(p.location); });
  r.values["constrainedRegions"] = static_cast<long long>(constrained_regions(sealed).size());

  bool spacing = true;
  for (std::size_t i = 1; i < arm_rows.size(); ++i) spacing = spacing && arm_rows[i - 1] - arm_rows[i] == 4;

  AssemblyTrace extended = t;
  const Placement forbidden{{L, arm_rows.back(), 0}, sys.tiles.index_of("H")};
  extended.steps.push_back(forbidden);
  bool rejected = false;
  try {
    run_trace(sys, extended);
  } catch (const Error& e) {
    rejected = e.kind() == ErrorKind::InvalidStep && e.index() == t.size() &&
               e.cause() == ErrorKind::ConstrainedLocation;
    r.values["rejectedIndex"] = static_cast<long long>(e.index().value_or(0));
  }
  r.assertions = {
      {"armsSpacedFour", spacing},
      {"patamInteriorFrontierEmpty", !frontier_hits(patam, interior)},
      {"patamTerminal", patam.empty()},
      {"atamInteriorFrontierNonEmpty", frontier_hits(atam_frontier, interior)},
      {"interiorStepRejected", rejected},
  };
  return r;
}

ScenarioResult scenario_plug_chambers(int h) {
  if (h < 4) throw Error(ErrorKind::InvalidArgument, "plug-chambers needs h >= 4");
  ScenarioResult r;
  r.name = "plug-chambers";
  Chambers ch = gen_chambers(h);
  r.system = ch.system;
  const TileSystem& sys = r.system;
  const ChamberLayout& L = ch.layout;
  AssemblyTrace& t = r.trace;
  for (std::size_t i = 1; i < L.shell.size(); ++i) t.steps.push_back({L.shell[i], static_cast<TileIndex>(i)});
  r.checkpoints.push_back({"shell", t.size()});
  for (int z = 1; z <= 2; ++z) t.steps.push_back({L.inner_center + Point{0, 0, z}, ch.pillar_tile});
  for (int z = 1; z < h; ++z) t.steps.push_back({L.outer_center + Point{0, 0, z}, ch.pillar_tile});
  const std::size_t pre_plug = t.size();
  r.checkpoints.push_back({"prePlug", pre_plug});
  t.steps.push_back({L.outer_center + Point{0, 0, h}, ch.pillar_tile});
  r.checkpoints.push_back({"plugged", t.size()});
  t.steps.push_back({L.ceiling_hole, ch.pillar_tile});

  const Point inner_tip = L.inner_center + Point{0, 0, 3};
  auto inner = [&](const Point& p) { return p.x == L.inner_center.x && p.y == L.inner_center.y && p.z > 0; };
  const TileSystem spatial = sys.with_diffusion(false);
  const Assembly pre = run_trace(sys, t.prefix(pre_plug));
  const Assembly post = run_trace(sys, t);
  const Assembly post_unrestricted = run_trace(spatial, t);

  auto in_region = [&](const Assembly& a) {
    for (const auto& region : constrained_regions(a))
      if (region.count(inner_tip)) return true;
    return false;
  };
  long long outer_base = 0, inner_base = 0;
  for (const Point& p : L.shell) {
    if (p.z != 0) continue;
    (p.x < 9 ? outer_base : inner_base) += 1;
  }
  r.values["outerBase"] = outer_base;
  r.values["innerBase"] = inner_base;
  r.values["shellTiles"] = static_cast<long long>(L.shell.size());
  r.assertions = {
      {"prePlugInnerExtendableSaTAM", frontier_hits(frontier(pre, sys), inner)},
      {"prePlugInnerExtendable3DaTAM", frontier_hits(frontier(run_trace(spatial, t.prefix(pre_plug)), spatial), inner)},
      {"prePlugInnerTipOutside", !in_region(pre)},
      {"innerPillarFrontierEmptySaTAM", !frontier_hits(frontier(post, sys), inner)},
      {"innerPillarFrontierNonEmpty3DaTAM", frontier_hits(frontier(post_unrestricted, spatial), inner)},
      {"innerTipConstrainedAfterPlug", in_region(post)},
      {"baseFootprints81", outer_base == 81 && inner_base == 81},
  };
  return r;
}

namespace {

// Greedy growth taking the first allowed placement of the canonical frontier.
AssemblyTrace grow(const TileSystem& sys, const std::function<bool(const Placement&)>& allowed) {
  AssemblyTrace trace;
  Assembly current = sys.seed;
  for (;;) {
    const auto f = frontier(current, sys);
    auto it = std::find_if(f.begin(), f.end(), allowed);
    if (it == f.end()) break;
    current.place(it->location, it->tile);
    trace.steps.push_back(*it);
  }
  return trace;
}

std::optional<int> crash_row(const Assembly& a, int x, TileIndex column) {
  std::optional<int> low;
  for (const auto& [p, t] : a.placements())
    if (p.x == x && t == column) low = low ? std::min(*low, p.y) : p.y;
  return low;
}

}  // namespace

ScenarioResult scenario_pump_arm(int k, int prefix) {
  if (prefix < 1) throw Error(ErrorKind::InvalidArgument, "pump-arm prefix must be >= 1");
  ScenarioResult r;
  r.name = "pump-arm";
  BlockingCounters bc = gen_blocking_counters(k);
  r.system = bc.system;
  const TileSystem& sys = r.system;
  const CounterLayout& last = bc.counters.back();

  const AssemblyTrace direct = grow(sys, [](const Placement&) { return true; });
  const Assembly direct_result = run_trace(sys, direct);
  const auto direct_crash = crash_row(direct_result, last.arm_x, bc.column_tile);

  r.trace = grow(sys, [&](const Placement& p) {
    if (p.location == last.red) return false;
    return !(p.tile == bc.column_tile && p.location.x == last.arm_x && p.location.y < last.cap_y - prefix);
  });
  r.checkpoints.push_back({"armPrefix", r.trace.size()});

  const Window templ = Window::box({last.arm_x - 1, 2, 0}, {last.arm_x + 1, last.cap_y - 1, 0}, 2);
  auto match = find_matching_window_pair(sys, r.trace, templ, {Point{0, 0, 0}, Point{0, -1, 0}});
  if (!match)
    throw Error(ErrorKind::NoMatchingWindow,
                "no two windows along the arm share a movie (prefix " + std::to_string(prefix) + ")");
  const PumpResult pumped = pump(sys, r.trace, match->first, match->c);
  r.trace = pumped.trace;
  r.checkpoints.push_back({"pumped", r.trace.size()});
  const Assembly pumped_result = run_trace(sys, r.trace);
  const auto pumped_crash = crash_row(pumped_result, last.arm_x, bc.column_tile);

  r.values["n"] = last.n;
  r.values["directCrashRow"] = direct_crash.value_or(-1);
  r.values["pumpedCrashRow"] = pumped_crash.value_or(-1);
  r.values["pumpIterations"] = static_cast<long long>(pumped.completed);
  r.values["windowShiftY"] = match->c.y;
  r.assertions = {
      {"pumpBlocked", pumped.blocked},
      {"crashAdjacentToPlanter", direct_crash == 1},
      {"crashRowsEqual", direct_crash.has_value() && direct_crash == pumped_crash},
      {"redPlacedInDirectRun", direct_result.at(last.red) == std::optional<TileIndex>{bc.red_tile}},
  };
  return r;
}

}  // namespace tam
