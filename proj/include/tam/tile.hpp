#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tam/geometry.hpp"

namespace tam {

struct Glue {
  std::string label;
  int strength = 0;

  bool is_null() const { return label.empty() && strength == 0; }
  friend auto operator<=>(const Glue&, const Glue&) = default;
};

// Two abutting glues bind iff they are equal in label and strength and the
// strength is positive.
inline int bond_strength(const Glue& a, const Glue& b) {
  return (a.strength > 0 && a == b) ? a.strength : 0;
}

struct TileType {
  std::string id;
  std::string label;
  std::array<Glue, 6> glues{};  // indexed by Direction; U/D stay null in 2D

  const Glue& glue(Direction d) const { return glues[index(d)]; }
  Glue& glue(Direction d) { return glues[index(d)]; }
  friend bool operator==(const TileType&, const TileType&) = default;
};

using TileIndex = std::uint32_t;

// Finite tile set with a (direction, glue) -> tiles index for frontier queries.
class TileSet {
 public:
  TileSet() = default;
  TileSet(int dimension, std::vector<TileType> tiles);

  int dimension() const { return dimension_; }
  std::size_t size() const { return tiles_.size(); }
  const std::vector<TileType>& tiles() const { return tiles_; }
  const TileType& operator[](TileIndex i) const { return tiles_.at(i); }

  std::optional<TileIndex> find(const std::string& id) const;
  TileIndex index_of(const std::string& id) const;  // throws UnknownTile
  const std::string& id(TileIndex i) const { return tiles_.at(i).id; }

  // Tiles whose glue on side `d` equals `g` (positive strength only).
  std::span<const TileIndex> tiles_with_glue(Direction d, const Glue& g) const;

  // Duplicate ids are tolerated here so that validation can report them.
  std::vector<std::string> duplicate_ids() const;

  friend bool operator==(const TileSet& a, const TileSet& b) {
    return a.dimension_ == b.dimension_ && a.tiles_ == b.tiles_;
  }

 private:
  int dimension_ = 2;
  std::vector<TileType> tiles_;
  std::unordered_map<std::string, TileIndex> by_id_;
  std::array<std::map<Glue, std::vector<TileIndex>>, 6> by_glue_;
};

}  // namespace tam
