#pragma once

#include <string>
#include <vector>

#include "tam/assembly.hpp"
#include "tam/tile.hpp"

namespace tam {

// (2,false)=aTAM, (2,true)=PaTAM, (3,false)=3DaTAM, (3,true)=SaTAM.
struct ModelVariant {
  int dimension = 2;
  bool diffusion_restricted = false;

  std::string name() const;
  friend bool operator==(const ModelVariant&, const ModelVariant&) = default;
};

struct TileSystem {
  std::string name;
  TileSet tiles;
  Assembly seed;
  int temperature = 1;
  ModelVariant variant;

  // Same system with another model variant (dimension must not change).
  TileSystem with_diffusion(bool restricted) const;
};

enum class ViolationKind {
  UnknownTileInSeed,
  DuplicateTileId,
  SeedUnstable,
  SeedDisconnected,
  NegativeTemperature,
  EmptySeed,
  DimensionMismatch,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const;
};

ValidationReport validate(const TileSystem& system);

// Convenience builder used by generators and tests.
TileType make_tile(std::string id, std::initializer_list<std::pair<Direction, Glue>> glues,
                   std::string label = {});

}  // namespace tam
