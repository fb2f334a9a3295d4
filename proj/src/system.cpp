#include "tam/system.hpp"

#include <algorithm>

namespace tam {

std::string ModelVariant::name() const {
  if (dimension == 2) return diffusion_restricted ? "PaTAM" : "aTAM";
  return diffusion_restricted ? "SaTAM" : "3DaTAM";
}

TileSystem TileSystem::with_diffusion(bool restricted) const {
  TileSystem copy = *this;
  copy.variant.diffusion_restricted = restricted;
  return copy;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::UnknownTileInSeed: return "UnknownTileInSeed";
    case ViolationKind::DuplicateTileId: return "DuplicateTileId";
    case ViolationKind::SeedUnstable: return "SeedUnstable";
    case ViolationKind::SeedDisconnected: return "SeedDisconnected";
    case ViolationKind::NegativeTemperature: return "NegativeTemperature";
    case ViolationKind::EmptySeed: return "EmptySeed";
    case ViolationKind::DimensionMismatch: return "DimensionMismatch";
  }
  return "Unknown";
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(),
                     [kind](const Violation& v) { return v.kind == kind; });
}

ValidationReport validate(const TileSystem& system) {
  ValidationReport report;
  auto add = [&](ViolationKind k, std::string msg) { report.violations.push_back({k, std::move(msg)}); };

  if (system.temperature <= 0)
    add(ViolationKind::NegativeTemperature,
        "temperature must be positive, got " + std::to_string(system.temperature));
  if (system.variant.dimension != 2 && system.variant.dimension != 3)
    add(ViolationKind::DimensionMismatch, "dimension must be 2 or 3");
  if (system.tiles.dimension() != system.variant.dimension ||
      system.seed.dimension() != system.variant.dimension)
    add(ViolationKind::DimensionMismatch, "tile set, seed and variant disagree on dimension");
  for (const auto& id : system.tiles.duplicate_ids())
    add(ViolationKind::DuplicateTileId, "tile id '" + id + "' appears more than once");
  if (system.variant.dimension == 2) {
    for (const auto& t : system.tiles.tiles())
      if (!t.glue(Direction::U).is_null() || !t.glue(Direction::D).is_null())
        add(ViolationKind::DimensionMismatch, "planar tile '" + t.id + "' has a U/D glue");
  }

  bool seed_indices_ok = true;
  for (const auto& [p, t] : system.seed.placements()) {
    if (t >= system.tiles.size()) {
      add(ViolationKind::UnknownTileInSeed, "seed placement at " + to_string(p) + " uses unknown tile");
      seed_indices_ok = false;
    }
    if (system.variant.dimension == 2 && p.z != 0)
      add(ViolationKind::DimensionMismatch, "planar seed placement off the z=0 plane");
  }
  if (system.seed.empty()) {
    add(ViolationKind::EmptySeed, "seed has no tiles");
  } else if (!system.seed.connected()) {
    add(ViolationKind::SeedDisconnected, "seed domain is not connected");
  } else if (seed_indices_ok && system.temperature > 0 &&
             !is_tau_stable(system.seed, system.tiles, system.temperature)) {
    add(ViolationKind::SeedUnstable,
        "seed is not " + std::to_string(system.temperature) + "-stable");
  }
  return report;
}

TileType make_tile(std::string id, std::initializer_list<std::pair<Direction, Glue>> glues,
                   std::string label) {
  TileType t;
  t.label = label.empty() ? id : std::move(label);
  t.id = std::move(id);
  for (const auto& [d, g] : glues) t.glue(d) = g;
  return t;
}

}  // namespace tam
