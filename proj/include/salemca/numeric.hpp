#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace salemca {

// Every count in this project is exact. Spatio-temporal cumulative counts
// grow like (B+1)^k and leave 64 bits quickly, so the whole count/ratio
// layer runs on arbitrary-precision integers and rationals.
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt ipow(BigInt base, std::uint64_t exp) {
  BigInt acc = 1;
  while (exp != 0) {
    if (exp & 1) acc *= base;
    base *= base;
    exp >>= 1;
  }
  return acc;
}

inline int popcount_u64(std::uint64_t v) { return std::popcount(v); }

// log2 of a positive BigInt. Scales the top 52 bits into a double and adds
// the bit offset, so it stays accurate for values far beyond 2^53.
inline double log2_value(const BigInt& v) {
  using boost::multiprecision::msb;
  if (v <= 0) return -std::numeric_limits<double>::infinity();
  const unsigned top = msb(v);  // index of highest set bit
  if (top <= 52) return std::log2(v.convert_to<double>());
  const BigInt scaled = v >> (top - 52);
  return static_cast<double>(top - 52) + std::log2(scaled.convert_to<double>());
}

}  // namespace salemca
