#include "salemca/closedform.hpp"

#include <stdexcept>

namespace salemca {

ClosedFormFamily ClosedFormFamily::from_branching(BigInt b) {
  if (b <= 0) throw std::invalid_argument("branching factor must be positive");
  ClosedFormFamily f;
  f.mass = b + 1;
  f.branching = std::move(b);
  return f;
}

ClosedFormFamily ClosedFormFamily::axis_rule(int d) {
  if (d < 1) throw std::invalid_argument("F_D requires D >= 1");
  return from_branching(BigInt(2 * d));
}

ClosedFormFamily ClosedFormFamily::corner_rule(int d) {
  if (d < 1) throw std::invalid_argument("G_D requires D >= 1");
  return from_branching(BigInt(1) << d);
}

ClosedFormFamily ClosedFormFamily::hex_h2() { return from_branching(BigInt(4)); }
ClosedFormFamily ClosedFormFamily::hex_h3() { return from_branching(BigInt(3)); }

BigInt closed_num(const ClosedFormFamily& family, std::uint64_t n) {
  return ipow(family.branching, popcount_u64(n));
}

BigInt closed_cum_pow2(const ClosedFormFamily& family, int k) {
  if (k < 0) throw std::invalid_argument("k must be nonnegative");
  return ipow(family.mass, k);
}

BigInt cum_decompose(const ClosedFormFamily& family, std::uint64_t n, int k) {
  if (k < 0 || k > 63) throw std::domain_error("bit length k must be in 0..63");
  if (n > (std::uint64_t{1} << k)) throw std::domain_error("n exceeds 2^k");
  // Each set bit at position p opens num(prefix) = B^(ones above p) copies
  // of the length-2^p block, each contributing cum(2^p - 1) = (B+1)^p.
  BigInt total = 0;
  int ones_above = 0;
  for (int p = k; p >= 0; --p) {
    if ((n >> p) & 1u) {
      total += ipow(family.branching, ones_above) * ipow(family.mass, p);
      ++ones_above;
    }
  }
  return total;
}

}  // namespace salemca
