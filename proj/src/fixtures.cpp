#include "tam/systems.hpp"

namespace tam::fixtures {

namespace {

using D = Direction;

Glue g(const std::string& label) { return Glue{label, 1}; }

TileSystem build(std::string name, std::vector<TileType> tiles, const std::string& seed_tile, int dim = 2) {
  TileSystem sys;
  sys.name = std::move(name);
  sys.tiles = TileSet(dim, std::move(tiles));
  sys.temperature = 1;
  sys.variant = {dim, false};
  sys.seed = Assembly(dim);
  sys.seed.place(Point{}, sys.tiles.index_of(seed_tile));
  return sys;
}

ResolverRule rule(const TileSystem& s, const TileSystem& t, std::vector<std::pair<Point, std::string>> cells,
                  const std::string& output) {
  ResolverRule r;
  for (const auto& [p, id] : cells) r.pattern.push_back({p, s.tiles.index_of(id)});
  r.output = t.tiles.index_of(output);
  return r;
}

TileSystem lone_tile() { return build("lone-tile", {make_tile("t", {})}, "t"); }

}  // namespace

TileSystem ribbon() { return build("ribbon", {make_tile("R", {{D::W, g("r")}, {D::E, g("r")}})}, "R"); }

TileSystem directed_row(int length) {
  std::vector<TileType> tiles;
  for (int i = 0; i < length; ++i) {
    TileType t = make_tile("T" + std::to_string(i), {});
    if (i > 0) t.glue(D::W) = g("g" + std::to_string(i));
    if (i + 1 < length) t.glue(D::E) = g("g" + std::to_string(i + 1));
    tiles.push_back(std::move(t));
  }
  return build("directed-row-" + std::to_string(length), std::move(tiles), "T0");
}

Ring ring(bool diffusion) {
  std::vector<TileType> tiles{
      make_tile("R0", {{D::E, g("c1")}}),
      make_tile("R1", {{D::W, g("c1")}, {D::E, g("c2")}, {D::N, g("x")}}),
      make_tile("R2", {{D::W, g("c2")}, {D::N, g("c3")}}),
      make_tile("R3", {{D::S, g("c3")}, {D::N, g("c4")}}),
      make_tile("R4", {{D::S, g("c4")}, {D::W, g("c5")}}),
      make_tile("R5", {{D::E, g("c5")}, {D::W, g("c6")}}),
      make_tile("R6", {{D::E, g("c6")}, {D::S, g("c7")}}),
      make_tile("R7", {{D::N, g("c7")}}),
      make_tile("X", {{D::S, g("x")}}),
  };
  Ring r;
  r.system = build("ring", std::move(tiles), "R0");
  r.system.variant.diffusion_restricted = diffusion;
  const Point cells[] = {{1, 0, 0}, {2, 0, 0}, {2, 1, 0}, {2, 2, 0}, {1, 2, 0}, {0, 2, 0}, {0, 1, 0}};
  for (TileIndex i = 0; i < 7; ++i) r.trace.steps.push_back({cells[i], i + 1});
  r.centre = {1, 1, 0};
  return r;
}

std::vector<NamedSetup> identity_setups() {
  return {
      {"ab-identity", identity_setup(gen_undirected_ab()), CheckKind::Monotonic},
      {"row-identity", identity_setup(directed_row(5)), CheckKind::Monotonic},
  };
}

std::vector<NamedSetup> broken_setups() {
  std::vector<NamedSetup> out;
  {
    // A path of fuzz wanders from the seed block into the diagonal block.
    const TileSystem t = lone_tile();
    const TileSystem s = build("fuzz-path",
                               {make_tile("s0", {{D::E, g("f1")}}),
                                make_tile("F1", {{D::W, g("f1")}, {D::N, g("f2")}}),
                                make_tile("F2", {{D::S, g("f2")}, {D::E, g("f3")}}),
                                make_tile("F3", {{D::W, g("f3")}, {D::N, g("f4")}}),
                                make_tile("F4", {{D::S, g("f4")}})},
                               "s0");
    SimulationSetup setup{s, t, 2, {2, {rule(s, t, {{Point{}, "s0"}}, "t")}}};
    out.push_back({"diagonal-fuzz", setup, CheckKind::Clean});
  }
  {
    // Block (0,1) resolves to A on pa and is re-read as B once qa arrives.
    const TileSystem t = gen_undirected_ab();
    const TileSystem s = build("flip-flop",
                               {make_tile("s0", {{D::N, g("u")}}),
                                make_tile("u1", {{D::S, g("u")}, {D::N, g("v")}}),
                                make_tile("pa", {{D::S, g("v")}, {D::N, g("wa")}}),
                                make_tile("pb", {{D::S, g("v")}}),
                                make_tile("pc", {{D::S, g("v")}}),
                                make_tile("qa", {{D::S, g("wa")}})},
                               "s0");
    SimulationSetup setup{s, t, 2, {2, {}}};
    setup.resolver.rules = {
        rule(s, t, {{Point{}, "s0"}}, "S"),
        rule(s, t, {{Point{}, "pa"}, {Point{0, 1, 0}, "qa"}}, "B"),
        rule(s, t, {{Point{}, "pa"}}, "A"),
        rule(s, t, {{Point{}, "pb"}}, "B"),
        rule(s, t, {{Point{}, "pc"}}, "A"),
    };
    out.push_back({"non-monotone", setup, CheckKind::Monotonic});
  }
  {
    // Tile B never resolves.
    const TileSystem ab = gen_undirected_ab();
    SimulationSetup setup{ab, ab, 1, {1, {rule(ab, ab, {{Point{}, "S"}}, "S"), rule(ab, ab, {{Point{}, "A"}}, "A")}}};
    out.push_back({"missing-terminal-image", setup, CheckKind::Productions});
  }
  {
    // A third branch C is terminal in S but represents the non-terminal seed.
    const TileSystem t = gen_undirected_ab();
    const TileSystem s = build("abc",
                               {make_tile("S", {{D::N, g("a")}}), make_tile("A", {{D::S, g("a")}}),
                                make_tile("B", {{D::S, g("a")}}), make_tile("C", {{D::S, g("a")}})},
                               "S");
    SimulationSetup setup{s, t, 1, {1, {rule(s, t, {{Point{}, "S"}}, "S"), rule(s, t, {{Point{}, "A"}}, "A"),
                                        rule(s, t, {{Point{}, "B"}}, "B")}}};
    out.push_back({"extra-production", setup, CheckKind::Productions});
  }
  {
    // S chooses between two fuzz tiles, T has a single terminal.
    const TileSystem t = lone_tile();
    const TileSystem s = build("fuzz-choice",
                               {make_tile("s0", {{D::E, g("f")}}), make_tile("F1", {{D::W, g("f")}}),
                                make_tile("F2", {{D::W, g("f")}})},
                               "s0");
    SimulationSetup setup{s, t, 1, {1, {rule(s, t, {{Point{}, "s0"}}, "t")}}};
    out.push_back({"directedness-breaking", setup, CheckKind::Directedness});
  }
  return out;
}

}  // namespace tam::fixtures
