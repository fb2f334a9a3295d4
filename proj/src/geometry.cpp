#include "tam/geometry.hpp"

#include <cstdlib>

namespace tam {

std::string to_string(const Point& p, int dimension) {
  std::string s = "(" + std::to_string(p.x) + "," + std::to_string(p.y);
  if (dimension == 3) s += "," + std::to_string(p.z);
  return s + ")";
}

std::span<const Direction> directions(int dimension) {
  if (dimension == 3) return kSpatialDirections;
  return kPlanarDirections;
}

char letter(Direction d) {
  static constexpr char kLetters[] = {'W', 'S', 'D', 'U', 'N', 'E'};
  return kLetters[index(d)];
}

std::optional<Direction> direction_from_letter(char c) {
  switch (c) {
    case 'W': return Direction::W;
    case 'S': return Direction::S;
    case 'D': return Direction::D;
    case 'U': return Direction::U;
    case 'N': return Direction::N;
    case 'E': return Direction::E;
    default: return std::nullopt;
  }
}

std::optional<Direction> direction_between(const Point& from, const Point& to) {
  const Point d = to - from;
  if (std::abs(d.x) + std::abs(d.y) + std::abs(d.z) != 1) return std::nullopt;
  if (d.x == -1) return Direction::W;
  if (d.x == 1) return Direction::E;
  if (d.y == -1) return Direction::S;
  if (d.y == 1) return Direction::N;
  if (d.z == -1) return Direction::D;
  return Direction::U;
}

Box Box::inflated(int by, int dimension) const {
  Box b = *this;
  b.min.x -= by;
  b.min.y -= by;
  b.max.x += by;
  b.max.y += by;
  if (dimension == 3) {
    b.min.z -= by;
    b.max.z += by;
  }
  return b;
}

std::size_t Box::volume() const {
  if (max.x < min.x || max.y < min.y || max.z < min.z) return 0;
  return static_cast<std::size_t>(max.x - min.x + 1) * static_cast<std::size_t>(max.y - min.y + 1) *
         static_cast<std::size_t>(max.z - min.z + 1);
}

BoxIndexer::BoxIndexer(const Box& box)
    : box_(box),
      nx_(static_cast<std::size_t>(box.max.x - box.min.x + 1)),
      ny_(static_cast<std::size_t>(box.max.y - box.min.y + 1)),
      nz_(static_cast<std::size_t>(box.max.z - box.min.z + 1)),
      size_(nx_ * ny_ * nz_) {}

std::size_t BoxIndexer::operator()(const Point& p) const {
  return (static_cast<std::size_t>(p.z - box_.min.z) * ny_ +
          static_cast<std::size_t>(p.y - box_.min.y)) *
             nx_ +
         static_cast<std::size_t>(p.x - box_.min.x);
}

Point BoxIndexer::point(std::size_t i) const {
  const int x = static_cast<int>(i % nx_);
  i /= nx_;
  const int y = static_cast<int>(i % ny_);
  const int z = static_cast<int>(i / ny_);
  return {box_.min.x + x, box_.min.y + y, box_.min.z + z};
}

}  // namespace tam
