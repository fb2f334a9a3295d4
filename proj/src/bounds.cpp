#include "tam/bounds.hpp"

#include "tam/error.hpp"

namespace tam {

namespace {

BigInt factorial(long long n) {
  BigInt out = 1;
  for (long long i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

BigInt pumping_bound(int dimension, int c, int tile_count) {
  if (c <= 0 || tile_count <= 0 || (dimension != 2 && dimension != 3))
    throw Error(ErrorKind::InvalidArgument, "pumping bound needs dimension 2|3 and positive c, n");
  const long long k = dimension == 2 ? 3LL * c : 9LL * c * c;
  return factorial(k) * boost::multiprecision::pow(BigInt(tile_count + 1), static_cast<unsigned>(k));
}

ChamberBounds chamber_bounds(int c, const BigInt& p) {
  if (c <= 0 || p < 0) throw Error(ErrorKind::InvalidArgument, "chamber bounds need c > 0, p >= 0");
  BigInt b = BigInt(25) * c * c;
  BigInt h = (p + 1) * (b + 2) + 2;
  return {b, h};
}

}  // namespace tam
