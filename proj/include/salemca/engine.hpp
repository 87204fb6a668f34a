#pragma once

#include "salemca/numeric.hpp"
#include "salemca/rules.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace salemca {

// Thrown when a run would allocate past EngineOptions::mem_cap_bytes.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EngineOptions {
  int threads = 1;  // destination rows are partitioned; results are bit-exact
  std::size_t mem_cap_bytes = std::size_t{2} << 30;
};

// Dense bit-packed hyperrectangle. The last axis is packed into 64-bit
// words; the other axes form "rows" in mixed-radix row-major order. Bits
// past the last-axis extent in the final word of a row are kept zero.
class BitGrid {
 public:
  BitGrid() = default;
  explicit BitGrid(std::vector<int> extents);

  int dims() const { return static_cast<int>(extents_.size()); }
  int extent(int axis) const { return extents_[axis]; }
  int width() const { return width_; }
  std::size_t rows() const { return rows_; }
  std::size_t words_per_row() const { return words_per_row_; }
  std::size_t byte_size() const { return words_.size() * sizeof(std::uint64_t); }
  std::uint64_t tail_mask() const { return tail_mask_; }

  std::uint64_t* row(std::size_t r) { return words_.data() + r * words_per_row_; }
  const std::uint64_t* row(std::size_t r) const { return words_.data() + r * words_per_row_; }
  std::size_t row_stride(int axis) const { return row_stride_[axis]; }

  // idx[a] in [0, extent(a))
  bool get_index(std::span<const int> idx) const;
  void set_index(std::span<const int> idx, bool value);

  std::uint64_t popcount() const;
  void clear();

  bool operator==(const BitGrid&) const = default;

 private:
  std::vector<int> extents_;
  std::vector<std::size_t> row_stride_;  // strides of axes 0..dims-2 in rows
  std::size_t rows_ = 1;
  std::size_t words_per_row_ = 0;
  int width_ = 0;
  std::uint64_t tail_mask_ = 0;
  std::vector<std::uint64_t> words_;
};

/// The light-cone window holding one configuration T^n u_o. Cell
/// coordinates run over [-radius[a], +radius[a]] per axis; cells outside
/// the window are implicitly 0 (the lattice is infinite, the cone is not).
struct PatternWindow {
  Lattice lattice;
  int time = 0;
  std::vector<int> radius;
  BitGrid grid;

  bool get(std::span<const int> cell) const;
  bool operator==(const PatternWindow&) const = default;
};

/// Exact per-step and cumulative 1-state counts for n = 0..horizon.
struct CountSeries {
  Rule rule;
  int horizon = 0;
  std::vector<BigInt> num;
  std::vector<BigInt> cum;
};

PatternWindow seed(const Lattice& lattice, std::span<const int> radius);
PatternWindow seed(const Lattice& lattice, int radius);

// One synchronous update. Requires radius[a] >= (time+1) * growth[a] so the
// light cone still fits, and rule.lattice == w.lattice.
PatternWindow step(const PatternWindow& w, const Rule& rule, const EngineOptions& opts = {});

CountSeries run_counts(const Rule& rule, int horizon, const EngineOptions& opts = {});

// Same evolution, keeping every window 0..horizon (property checks need
// pairs of time steps). Stencil overload accepts ad hoc linear rules that
// are outside the symmetric catalog.
std::vector<PatternWindow> evolve_history(const Rule& rule, int horizon,
                                          const EngineOptions& opts = {});
std::vector<PatternWindow> evolve_history(const Lattice& lattice, const Stencil& stencil,
                                          int horizon, const EngineOptions& opts = {});

// (T^n u_o) at one cell, by evolution in the minimal window.
int state_at(const Rule& rule, int n, std::span<const int> cell);

struct Grid2D {
  int rows = 0, cols = 0;
  int row0 = 0, col0 = 0;  // lattice coordinate of entry (0, 0)
  std::vector<std::uint8_t> bits;

  std::uint8_t at(int r, int c) const { return bits[static_cast<std::size_t>(r) * cols + c]; }
  std::uint64_t popcount() const;
};

// Cross-section through a window: rows run along axis_r, columns along
// axis_c, remaining axes pinned by `fixed` (ascending axis order).
Grid2D slice_2d(const PatternWindow& w, int axis_r, int axis_c, std::span<const int> fixed);

}  // namespace salemca
