#include "tam/tile.hpp"

#include <algorithm>

#include "tam/error.hpp"

namespace tam {

TileSet::TileSet(int dimension, std::vector<TileType> tiles)
    : dimension_(dimension), tiles_(std::move(tiles)) {
  for (TileIndex i = 0; i < tiles_.size(); ++i) {
    by_id_.emplace(tiles_[i].id, i);  // first occurrence wins
    for (Direction d : directions(dimension_)) {
      const Glue& g = tiles_[i].glue(d);
      if (g.strength > 0) by_glue_[index(d)][g].push_back(i);
    }
  }
}

std::optional<TileIndex> TileSet::find(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

TileIndex TileSet::index_of(const std::string& id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::UnknownTile, "no tile type with id '" + id + "'");
}

std::span<const TileIndex> TileSet::tiles_with_glue(Direction d, const Glue& g) const {
  const auto& m = by_glue_[index(d)];
  auto it = m.find(g);
  if (it == m.end()) return {};
  return it->second;
}

std::vector<std::string> TileSet::duplicate_ids() const {
  std::vector<std::string> ids;
  for (const auto& t : tiles_) ids.push_back(t.id);
  std::sort(ids.begin(), ids.end());
  std::vector<std::string> dups;
  for (std::size_t i = 1; i < ids.size(); ++i)
    if (ids[i] == ids[i - 1] && (dups.empty() || dups.back() != ids[i])) dups.push_back(ids[i]);
  return dups;
}

}  // namespace tam
