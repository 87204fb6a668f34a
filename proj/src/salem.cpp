#include "salemca/salem.hpp"

#include <stdexcept>

namespace salemca {

BigRat Dyadic::value() const {
  if (unit) return BigRat(1);
  BigInt num = 0;
  for (std::uint8_t b : bits) num = (num << 1) | static_cast<int>(b);
  return BigRat(num, BigInt(1) << bits.size());
}

Dyadic Dyadic::from_numerator(const BigInt& m, int k) {
  if (k < 0) throw std::invalid_argument("dyadic precision must be nonnegative");
  if (m < 0 || m > (BigInt(1) << k)) throw std::invalid_argument("dyadic numerator out of [0, 2^k]");
  Dyadic d;
  if (m == (BigInt(1) << k)) {
    d.unit = true;
    return d;
  }
  d.bits.resize(k);
  for (int i = 1; i <= k; ++i) {
    d.bits[i - 1] = boost::multiprecision::bit_test(m, static_cast<unsigned>(k - i)) ? 1 : 0;
  }
  return d;
}

SalemParams::SalemParams(BigRat a) : alpha(std::move(a)) {
  if (alpha <= 0 || alpha >= 1 || alpha == BigRat(1, 2)) {
    throw std::invalid_argument("alpha must lie in (0,1) and differ from 1/2");
  }
}

BigRat eval_dyadic(const SalemParams& params, const Dyadic& x) {
  if (x.unit) return BigRat(1);
  const BigRat& a = params.alpha;
  const BigRat one_minus = BigRat(1) - a;
  // Innermost bit first: v starts at L(0) = 0.
  BigRat v = 0;
  for (auto it = x.bits.rbegin(); it != x.bits.rend(); ++it) {
    if (*it) {
      v = one_minus * v + a;
    } else {
      v = a * v;
    }
  }
  return v;
}

BigRat series_value(const BigInt& branching, const Dyadic& x) {
  if (branching < 2) throw std::invalid_argument("branching factor must be >= 2");
  if (x.unit) return BigRat(1);
  const int k = x.precision();
  const BigInt mass = branching + 1;
  // Common denominator (B+1)^k keeps the sum in integers.
  BigInt numerator = 0;
  BigInt branch_pow = 1;  // B^(ones among x_1..x_{i-1})
  BigInt mass_pow = ipow(mass, k);
  for (int i = 1; i <= k; ++i) {
    mass_pow /= mass;  // (B+1)^(k-i)
    if (x.bits[i - 1]) {
      numerator += branch_pow * mass_pow;
      branch_pow *= branching;
    }
  }
  return BigRat(numerator, ipow(mass, k));
}

bool check_functional_equation(const SalemParams& params, int k) {
  if (k < 1) throw std::invalid_argument("precision must be >= 1");
  const BigRat& a = params.alpha;
  const BigInt top = BigInt(1) << k;
  for (BigInt m = 0; m <= top; ++m) {
    const Dyadic x = Dyadic::from_numerator(m, k);
    const BigRat lx = eval_dyadic(params, x);
    // x/2 and (x+1)/2 as (k+1)-bit dyadics
    const BigRat lower = eval_dyadic(params, Dyadic::from_numerator(m, k + 1));
    const BigRat upper = eval_dyadic(params, Dyadic::from_numerator(m + top, k + 1));
    if (lower != a * lx) return false;
    if (upper != (BigRat(1) - a) * lx + a) return false;
  }
  return true;
}

}  // namespace salemca
