#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace tam {

// A lattice point of Z^2 or Z^3. Planar points keep z == 0.
struct Point {
  int x = 0;
  int y = 0;
  int z = 0;

  friend constexpr auto operator<=>(const Point&, const Point&) = default;

  constexpr Point operator+(const Point& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Point operator-(const Point& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Point operator-() const { return {-x, -y, -z}; }
  constexpr Point operator*(int k) const { return {x * k, y * k, z * k}; }
  Point& operator+=(const Point& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
};

std::string to_string(const Point& p, int dimension = 3);

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = static_cast<std::size_t>(p.x) * 0x9E3779B97F4A7C15ull;
    h ^= static_cast<std::size_t>(p.y) + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= static_cast<std::size_t>(p.z) + 0x94D049BB133111EBull + (h << 6) + (h >> 2);
    return h;
  }
};

// Axis unit vectors. Enumerator order is the lexicographic order of the
// coordinate tuples: (-1,0,0) < (0,-1,0) < (0,0,-1) < (0,0,1) < (0,1,0) < (1,0,0).
enum class Direction : int { W = 0, S = 1, D = 2, U = 3, N = 4, E = 5 };

inline constexpr std::array<Direction, 4> kPlanarDirections{Direction::W, Direction::S,
                                                            Direction::N, Direction::E};
inline constexpr std::array<Direction, 6> kSpatialDirections{
    Direction::W, Direction::S, Direction::D, Direction::U, Direction::N, Direction::E};

std::span<const Direction> directions(int dimension);

constexpr Point unit(Direction d) {
  switch (d) {
    case Direction::W: return {-1, 0, 0};
    case Direction::S: return {0, -1, 0};
    case Direction::D: return {0, 0, -1};
    case Direction::U: return {0, 0, 1};
    case Direction::N: return {0, 1, 0};
    case Direction::E: return {1, 0, 0};
  }
  return {};
}

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>(5 - static_cast<int>(d));
}

constexpr int index(Direction d) { return static_cast<int>(d); }

char letter(Direction d);
std::optional<Direction> direction_from_letter(char c);
// Unit vector -> direction; nullopt for anything that is not a unit vector.
std::optional<Direction> direction_between(const Point& from, const Point& to);

inline bool adjacent(const Point& a, const Point& b) {
  return direction_between(a, b).has_value();
}

// Inclusive axis-aligned box.
struct Box {
  Point min;
  Point max;

  bool contains(const Point& p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y && p.z >= min.z &&
           p.z <= max.z;
  }
  Box inflated(int by, int dimension) const;
  std::size_t volume() const;
  friend bool operator==(const Box&, const Box&) = default;
};

// Dense index helper over a box, used by flood fills.
class BoxIndexer {
 public:
  explicit BoxIndexer(const Box& box);
  std::size_t size() const { return size_; }
  std::size_t operator()(const Point& p) const;
  Point point(std::size_t i) const;
  const Box& box() const { return box_; }

 private:
  Box box_;
  std::size_t nx_, ny_, nz_, size_;
};

}  // namespace tam
