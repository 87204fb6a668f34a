#pragma once

#include "salemca/numeric.hpp"

#include <cstdint>

namespace salemca {

// Count formulas for the exactly self-similar rules. Each doubling of the
// time horizon multiplies the cumulative count by `mass`; each 1-state at
// an even step spawns `branching` states at the next odd step.
struct ClosedFormFamily {
  BigInt branching;  // B
  BigInt mass;       // B + 1

  static ClosedFormFamily from_branching(BigInt b);
  static ClosedFormFamily axis_rule(int d);    // F_D: B = 2D
  static ClosedFormFamily corner_rule(int d);  // G_D: B = 2^D
  static ClosedFormFamily hex_h2();            // B = 4
  static ClosedFormFamily hex_h3();            // B = 3
};

// num(n) = B^(number of set bits of n)
BigInt closed_num(const ClosedFormFamily& family, std::uint64_t n);

// cum(2^k - 1) = (B+1)^k
BigInt closed_cum_pow2(const ClosedFormFamily& family, int k);

// cum(n-1) via the self-similar decomposition: writing n = sum x_i 2^(k-i)
// (x_1 most significant), cum(n-1) = sum over set bits of
// B^(ones above the bit) * (B+1)^(bit position). Requires 0 <= n <= 2^k.
BigInt cum_decompose(const ClosedFormFamily& family, std::uint64_t n, int k);

}  // namespace salemca
