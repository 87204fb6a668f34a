#pragma once

#include "salemca/engine.hpp"
#include "salemca/numeric.hpp"
#include "salemca/rules.hpp"
#include "salemca/salem.hpp"

#include <optional>
#include <vector>

namespace salemca {

/// The normalized cumulative-count function f_{T,k} over all k-bit dyadics:
/// values[m] = cum(m-1) / cum(2^k - 1) for x = m / 2^k, m = 0..2^k.
struct FunctionTable {
  Rule rule;
  int k = 0;
  std::vector<BigRat> values;
};

FunctionTable build_function_table(const CountSeries& counts, int k);

enum class Verdict { Match, Refuted, Degenerate };

struct HalfValueCheck {
  int k = 0;
  BigRat value;                      // f_{T,k}(1/2) = cum(2^(k-1)-1) / cum(2^k-1)
  bool reciprocal_integral = false;  // true iff 1/value is an integer > 2
};

/// Outcome of screening one rule against the L_{1/M} family.
///  - Match: every half-value test passed and the full k_max table equals
///    L_{1/(M+1)} exactly; salem_m holds M.
///  - Refuted: refutation_k is the smallest k whose half-value test failed.
///  - Degenerate: trivial orbit (zero or identity rule); recorded but not
///    classified. Half-value data is still filled in for inspection.
struct ClassificationReport {
  Rule rule;
  int k_max = 0;
  BigRat half_value;
  Verdict verdict = Verdict::Degenerate;
  std::optional<BigInt> salem_m;
  std::optional<int> refutation_k;
  std::vector<HalfValueCheck> checks;  // k = 2..k_max
};

ClassificationReport classify_salem(const Rule& rule, int k_max, const EngineOptions& opts = {});

// Every catalog rule of the family, in enumeration order.
std::vector<ClassificationReport> screen_family(const Lattice& lattice, int k_max,
                                                const EngineOptions& opts = {});

// Verifies, for every n <= horizon/2, that (T^(2n) u_o) at 2i equals
// (T^n u_o) at i, and that every even step is zero on cells with an odd
// coordinate. Square lattices only; the stencil overload admits ad hoc
// non-symmetric linear rules.
bool takahashi_check(const Rule& rule, int horizon, const EngineOptions& opts = {});
bool takahashi_check(const Lattice& lattice, const Stencil& stencil, int horizon,
                     const EngineOptions& opts = {});

/// Box-counting data at scale 2^-k: the exact mass cum(2^k - 1) and the
/// dimension estimate log2(cum) / k.
struct BoxDimension {
  BigInt cum;
  int k = 0;
  double estimate = 0.0;
};

BoxDimension box_dimension_exponent(const CountSeries& counts, int k);

}  // namespace salemca
