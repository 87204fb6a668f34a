#pragma once

#include "salemca/numeric.hpp"

#include <cstdint>
#include <vector>

namespace salemca {

/// A dyadic rational in [0, 1] as an explicit binary expansion
/// x = sum x_i 2^-i with x_1 first. The value 1 has no finite expansion and
/// is carried by the `unit` flag instead (bits must then be empty).
struct Dyadic {
  std::vector<std::uint8_t> bits;
  bool unit = false;

  int precision() const { return static_cast<int>(bits.size()); }
  BigRat value() const;

  // m / 2^k for 0 <= m <= 2^k (m = 2^k yields the unit).
  static Dyadic from_numerator(const BigInt& m, int k);
};

/// Parameter of the singular function L_alpha: an exact rational in (0, 1)
/// with alpha != 1/2.
struct SalemParams {
  BigRat alpha;

  explicit SalemParams(BigRat a);
};

// L_alpha(x), exact. Peels one leading bit per functional-equation step:
// L(0.0t) = alpha L(0.t), L(0.1t) = (1-alpha) L(0.t) + alpha.
BigRat eval_dyadic(const SalemParams& params, const Dyadic& x);

// The equivalent finite series sum_i x_i B^(ones before i) (B+1)^-i, which
// is L_{1/(B+1)}(x) written through the branching factor B >= 2.
BigRat series_value(const BigInt& branching, const Dyadic& x);

// Exhaustively checks L(x/2) = alpha L(x) and L((x+1)/2) = (1-alpha) L(x) + alpha
// over every k-bit dyadic including the unit.
bool check_functional_equation(const SalemParams& params, int k);

}  // namespace salemca
