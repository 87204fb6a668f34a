#include "salemca/analysis.hpp"

#include <algorithm>
#include <stdexcept>

namespace salemca {

namespace {

BigInt pow2(int k) { return BigInt(1) << k; }

int require_horizon(const CountSeries& counts, int k) {
  if (k < 0) throw std::invalid_argument("precision k must be nonnegative");
  const BigInt needed = pow2(k) - 1;
  if (BigInt(counts.horizon) < needed) {
    throw std::invalid_argument("count series horizon is below 2^k - 1");
  }
  return static_cast<int>(needed.convert_to<long long>());
}

// Walks every cell of the box [-bound[a], bound[a]] and applies fn(cell).
// Returns false as soon as fn does.
bool for_each_cell(std::vector<int>& cell, const std::vector<int>& bound, std::size_t axis,
                   const auto& fn) {
  if (axis == bound.size()) return fn(cell);
  for (int v = -bound[axis]; v <= bound[axis]; ++v) {
    cell[axis] = v;
    if (!for_each_cell(cell, bound, axis + 1, fn)) return false;
  }
  return true;
}

}  // namespace

FunctionTable build_function_table(const CountSeries& counts, int k) {
  const int top = require_horizon(counts, k);
  FunctionTable table;
  table.rule = counts.rule;
  table.k = k;
  table.values.reserve(static_cast<std::size_t>(top) + 2);
  const BigInt& total = counts.cum[top];
  table.values.emplace_back(0);  // cum(-1) = 0
  for (int m = 1; m <= top + 1; ++m) {
    table.values.emplace_back(BigRat(counts.cum[m - 1], total));
  }
  return table;
}

ClassificationReport classify_salem(const Rule& rule, int k_max, const EngineOptions& opts) {
  if (k_max < 2 || k_max > 30) throw std::invalid_argument("classification needs 2 <= k_max <= 30");
  const int horizon = (1 << k_max) - 1;
  const CountSeries counts = run_counts(rule, horizon, opts);

  ClassificationReport report;
  report.rule = rule;
  report.k_max = k_max;

  for (int k = 2; k <= k_max; ++k) {
    const BigInt& half = counts.cum[static_cast<std::size_t>((pow2(k - 1) - 1).convert_to<long long>())];
    const BigInt& full = counts.cum[static_cast<std::size_t>((pow2(k) - 1).convert_to<long long>())];
    HalfValueCheck c;
    c.k = k;
    c.value = BigRat(half, full);
    c.reciprocal_integral = (full % half == 0) && (full / half > 2);
    report.checks.push_back(std::move(c));
  }
  report.half_value = report.checks.back().value;

  const bool dying = std::any_of(counts.num.begin(), counts.num.end(),
                                 [](const BigInt& v) { return v == 0; });
  if (rule.trivial || dying) {
    report.verdict = Verdict::Degenerate;
    return report;
  }

  for (const HalfValueCheck& c : report.checks) {
    if (!c.reciprocal_integral) {
      report.verdict = Verdict::Refuted;
      report.refutation_k = c.k;
      return report;
    }
  }

  // Candidate M from f(1/2) = 1/(M+1); the divisibility test already put
  // the half value into the form 1/(M+1), so the denominator is M+1. The
  // necessary condition holds at every k; require the full table to equal
  // L_{1/(M+1)} before claiming a match.
  const BigInt mass = boost::multiprecision::denominator(report.half_value);
  const FunctionTable table = build_function_table(counts, k_max);
  const SalemParams params{BigRat(1, mass)};
  const BigInt top = pow2(k_max);
  for (BigInt m = 0; m <= top; ++m) {
    const BigRat expected = eval_dyadic(params, Dyadic::from_numerator(m, k_max));
    if (table.values[static_cast<std::size_t>(m.convert_to<long long>())] != expected) {
      report.verdict = Verdict::Refuted;
      report.refutation_k = k_max;  // table-level mismatch
      return report;
    }
  }
  report.verdict = Verdict::Match;
  report.salem_m = mass - 1;
  return report;
}

std::vector<ClassificationReport> screen_family(const Lattice& lattice, int k_max,
                                                const EngineOptions& opts) {
  std::vector<ClassificationReport> reports;
  for (const Rule& rule : enumerate_rules(lattice)) {
    reports.push_back(classify_salem(rule, k_max, opts));
  }
  return reports;
}

bool takahashi_check(const Lattice& lattice, const Stencil& stencil, int horizon,
                     const EngineOptions& opts) {
  if (lattice.type != LatticeType::Square) {
    throw std::invalid_argument("Takahashi scaling check applies to square lattices");
  }
  const int d = lattice.dim;
  const std::vector<int> growth = stencil.growth();
  const auto windows = evolve_history(lattice, stencil, horizon, opts);

  std::vector<int> cell(d), doubled(d);

  // Scaling: (T^(2n) u_o)_(2i) = (T^n u_o)_i over the step-n light cone.
  for (int n = 0; 2 * n <= horizon; ++n) {
    std::vector<int> bound(d);
    for (int a = 0; a < d; ++a) bound[a] = growth[a] * n;
    const bool ok = for_each_cell(cell, bound, 0, [&](const std::vector<int>& c) {
      for (int a = 0; a < d; ++a) doubled[a] = 2 * c[a];
      return windows[n].get(c) == windows[2 * n].get(doubled);
    });
    if (!ok) return false;
  }

  // Even steps vanish on every cell with an odd coordinate.
  for (int n = 0; n <= horizon; n += 2) {
    std::vector<int> bound(d);
    for (int a = 0; a < d; ++a) bound[a] = growth[a] * n;
    const bool ok = for_each_cell(cell, bound, 0, [&](const std::vector<int>& c) {
      const bool any_odd = std::any_of(c.begin(), c.end(), [](int v) { return v & 1; });
      if (!any_odd) return true;
      return !windows[n].get(c);
    });
    if (!ok) return false;
  }
  return true;
}

bool takahashi_check(const Rule& rule, int horizon, const EngineOptions& opts) {
  return takahashi_check(rule.lattice, expand_stencil(rule), horizon, opts);
}

BoxDimension box_dimension_exponent(const CountSeries& counts, int k) {
  if (k < 1) throw std::invalid_argument("box dimension needs k >= 1");
  const int top = require_horizon(counts, k);
  BoxDimension b;
  b.cum = counts.cum[top];
  b.k = k;
  b.estimate = log2_value(b.cum) / k;
  return b;
}

}  // namespace salemca
