#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tam {

using BigInt = boost::multiprecision::cpp_int;

// Number of distinct window movies bounding the pumping argument:
// 2D (3c)! (n+1)^(3c), 3D (9c^2)! (n+1)^(9c^2), for scale c and n tile types.
BigInt pumping_bound(int dimension, int c, int tile_count);

struct ChamberBounds {
  BigInt b;  // 25 c^2
  BigInt h;  // (p + 1)(b + 2) + 2
};

ChamberBounds chamber_bounds(int c, const BigInt& p);

}  // namespace tam
