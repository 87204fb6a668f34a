#include "salemca/engine.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <limits>
#include <memory>
#include <thread>
#include <utility>

namespace salemca {

namespace {

constexpr std::uint64_t kEvenBits = 0x5555555555555555ULL;

int lattice_dims(const Lattice& lat) {
  return lat.type == LatticeType::Square ? lat.dim : 2;
}

// dst ^= src shifted by `shift` bits toward lower positions (dst bit b reads
// src bit b+shift); out-of-range source bits are zero.
void xor_shift_row(std::uint64_t* dst, const std::uint64_t* src, int shift,
                   std::size_t wpr, std::uint64_t tail_mask) {
  if (shift >= 0) {
    const std::size_t q = static_cast<std::size_t>(shift) >> 6;
    const int r = shift & 63;
    if (q >= wpr) return;
    for (std::size_t j = 0; j + q < wpr; ++j) {
      std::uint64_t w = src[j + q] >> r;
      if (r != 0 && j + q + 1 < wpr) w |= src[j + q + 1] << (64 - r);
      dst[j] ^= w;
    }
  } else {
    const std::size_t q = static_cast<std::size_t>(-shift) >> 6;
    const int r = (-shift) & 63;
    if (q >= wpr) return;
    for (std::size_t j = wpr; j-- > q;) {
      std::uint64_t w = src[j - q] << r;
      if (r != 0 && j - q >= 1) w |= src[j - q - 1] >> (64 - r);
      dst[j] ^= w;
    }
    dst[wpr - 1] &= tail_mask;
  }
}

struct OffsetPlan {
  std::vector<int> lo, hi;  // valid destination digit range per head axis
  std::ptrdiff_t row_delta = 0;
  int shift = 0;
};

std::vector<OffsetPlan> build_plans(const BitGrid& g, const std::vector<Offset>& offsets) {
  const int d = g.dims();
  std::vector<OffsetPlan> plans;
  plans.reserve(offsets.size());
  for (const Offset& v : offsets) {
    OffsetPlan p;
    p.lo.resize(d - 1);
    p.hi.resize(d - 1);
    bool feasible = true;
    for (int a = 0; a < d - 1; ++a) {
      p.lo[a] = std::max(0, -v[a]);
      p.hi[a] = std::min(g.extent(a), g.extent(a) - v[a]);
      if (p.lo[a] >= p.hi[a]) feasible = false;
      p.row_delta += static_cast<std::ptrdiff_t>(v[a]) * static_cast<std::ptrdiff_t>(g.row_stride(a));
    }
    p.shift = v[d - 1];
    if (std::abs(p.shift) >= g.width()) feasible = false;
    if (feasible) plans.push_back(std::move(p));
  }
  return plans;
}

void apply_plans(const BitGrid& src, BitGrid& dst, const std::vector<OffsetPlan>& plans,
                 std::size_t row_lo, std::size_t row_hi) {
  const int head_axes = dst.dims() - 1;
  const std::size_t wpr = dst.words_per_row();
  const std::uint64_t tail = dst.tail_mask();

  std::vector<int> digit(head_axes);
  {
    std::size_t rest = row_lo;
    for (int a = 0; a < head_axes; ++a) {
      digit[a] = static_cast<int>(rest / dst.row_stride(a));
      rest %= dst.row_stride(a);
    }
  }

  for (std::size_t r = row_lo; r < row_hi; ++r) {
    for (const OffsetPlan& p : plans) {
      bool ok = true;
      for (int a = 0; a < head_axes; ++a) {
        if (digit[a] < p.lo[a] || digit[a] >= p.hi[a]) {
          ok = false;
          break;
        }
      }
      if (ok) xor_shift_row(dst.row(r), src.row(r + p.row_delta), p.shift, wpr, tail);
    }
    for (int a = head_axes - 1; a >= 0; --a) {
      if (++digit[a] < dst.extent(a)) break;
      digit[a] = 0;
    }
  }
}

void run_chunked(std::size_t rows, int threads, const auto& fn) {
  if (threads <= 1 || rows < 2) {
    fn(std::size_t{0}, rows);
    return;
  }
  const std::size_t n = std::min<std::size_t>(threads, rows);
  const std::size_t chunk = (rows + n - 1) / n;
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(rows, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

// One full update of `src` into `dst` (cleared first). Triangular rules
// evaluate both orientation stencils over the whole grid and then select
// per cell by the parity of i+j.
struct StepKernel {
  std::vector<OffsetPlan> plans;
  std::vector<OffsetPlan> plans_odd;
  bool parity_split = false;
  int parity_phase = 0;  // (radius[0] + radius[1]) & 1

  StepKernel(const BitGrid& shape, const Stencil& st, std::span<const int> radius) {
    plans = build_plans(shape, st.offsets);
    parity_split = st.parity_split;
    if (parity_split) {
      assert(shape.dims() == 2);
      plans_odd = build_plans(shape, st.offsets_odd);
      parity_phase = (radius[0] + radius[1]) & 1;
    }
  }

  void run(const BitGrid& src, BitGrid& dst, BitGrid* even_buf, BitGrid* odd_buf,
           int threads) const {
    if (!parity_split) {
      dst.clear();
      run_chunked(dst.rows(), threads,
                  [&](std::size_t lo, std::size_t hi) { apply_plans(src, dst, plans, lo, hi); });
      return;
    }
    even_buf->clear();
    odd_buf->clear();
    run_chunked(dst.rows(), threads, [&](std::size_t lo, std::size_t hi) {
      apply_plans(src, *even_buf, plans, lo, hi);
      apply_plans(src, *odd_buf, plans_odd, lo, hi);
      const std::size_t wpr = dst.words_per_row();
      for (std::size_t r = lo; r < hi; ++r) {
        // even-parity cells sit at bit positions b with b = r+phase (mod 2)
        const std::uint64_t mask = ((r + parity_phase) & 1) ? ~kEvenBits : kEvenBits;
        const std::uint64_t* e = even_buf->row(r);
        const std::uint64_t* o = odd_buf->row(r);
        std::uint64_t* out = dst.row(r);
        for (std::size_t j = 0; j < wpr; ++j) out[j] = (e[j] & mask) | (o[j] & ~mask);
      }
    });
  }
};

std::vector<int> cone_radius(const Stencil& st, int horizon) {
  std::vector<int> r = st.growth();
  for (int& v : r) v *= horizon;
  return r;
}

std::vector<int> extents_for(std::span<const int> radius) {
  std::vector<int> e(radius.size());
  for (std::size_t a = 0; a < radius.size(); ++a) e[a] = 2 * radius[a] + 1;
  return e;
}

// Exact byte size of a grid with these extents, immune to size_t overflow.
BigInt grid_bytes_exact(std::span<const int> extents) {
  BigInt words = (static_cast<std::size_t>(extents.back()) + 63) / 64;
  for (std::size_t a = 0; a + 1 < extents.size(); ++a) words *= extents[a];
  return words * 8;
}

void check_mem(std::span<const int> extents, std::size_t copies, const EngineOptions& opts) {
  const BigInt total = grid_bytes_exact(extents) * copies;
  if (total > opts.mem_cap_bytes) {
    throw ResourceLimitError("window memory would exceed the configured cap (" +
                             total.str() + " bytes needed, cap " +
                             std::to_string(opts.mem_cap_bytes) + ")");
  }
}

// Shared evolution driver: one window allocated at the final cone size,
// two alternating buffers, optional parity scratch.
class Evolver {
 public:
  Evolver(const Lattice& lat, Stencil st, int horizon, const EngineOptions& opts,
          std::size_t extra_copies = 0)
      : lattice_(lat), stencil_(std::move(st)), opts_(opts), radius_(cone_radius(stencil_, horizon)) {
    const auto ext = extents_for(radius_);
    const std::size_t buffers = (stencil_.parity_split ? 4 : 2) + extra_copies;
    check_mem(ext, buffers, opts_);
    cur_ = BitGrid(ext);
    next_ = BitGrid(ext);
    if (stencil_.parity_split) {
      even_buf_ = BitGrid(ext);
      odd_buf_ = BitGrid(ext);
    }
    kernel_ = std::make_unique<StepKernel>(cur_, stencil_, radius_);
    std::vector<int> origin(radius_.begin(), radius_.end());
    cur_.set_index(origin, true);
  }

  void advance() {
    kernel_->run(cur_, next_, &even_buf_, &odd_buf_, opts_.threads);
    std::swap(cur_, next_);
    ++time_;
  }

  int time() const { return time_; }
  const BitGrid& grid() const { return cur_; }
  const std::vector<int>& radius() const { return radius_; }

  PatternWindow window() const { return PatternWindow{lattice_, time_, radius_, cur_}; }

 private:
  Lattice lattice_;
  Stencil stencil_;
  EngineOptions opts_;
  std::vector<int> radius_;
  int time_ = 0;
  BitGrid cur_, next_, even_buf_, odd_buf_;
  std::unique_ptr<StepKernel> kernel_;
};

}  // namespace

BitGrid::BitGrid(std::vector<int> extents) : extents_(std::move(extents)) {
  assert(!extents_.empty());
  const int d = dims();
  width_ = extents_[d - 1];
  words_per_row_ = (static_cast<std::size_t>(width_) + 63) / 64;
  row_stride_.assign(d - 1, 1);
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  for (int a = d - 2; a >= 0; --a) {
    row_stride_[a] = (a == d - 2) ? 1 : row_stride_[a + 1] * extents_[a + 1];
    const std::size_t e = static_cast<std::size_t>(extents_[a]);
    if (e != 0 && rows_ > kMax / e) throw std::length_error("bit grid too large");
    rows_ *= e;
  }
  if (words_per_row_ != 0 && rows_ > kMax / words_per_row_ / 8) {
    throw std::length_error("bit grid too large");
  }
  const int rem = width_ & 63;
  tail_mask_ = rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
  words_.assign(rows_ * words_per_row_, 0);
}

bool BitGrid::get_index(std::span<const int> idx) const {
  std::size_t r = 0;
  for (int a = 0; a < dims() - 1; ++a) r += static_cast<std::size_t>(idx[a]) * row_stride_[a];
  const int b = idx[dims() - 1];
  return (row(r)[b >> 6] >> (b & 63)) & 1u;
}

void BitGrid::set_index(std::span<const int> idx, bool value) {
  std::size_t r = 0;
  for (int a = 0; a < dims() - 1; ++a) r += static_cast<std::size_t>(idx[a]) * row_stride_[a];
  const int b = idx[dims() - 1];
  if (value) {
    row(r)[b >> 6] |= std::uint64_t{1} << (b & 63);
  } else {
    row(r)[b >> 6] &= ~(std::uint64_t{1} << (b & 63));
  }
}

std::uint64_t BitGrid::popcount() const {
  std::uint64_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::uint64_t>(std::popcount(w));
  return n;
}

void BitGrid::clear() { std::fill(words_.begin(), words_.end(), 0); }

bool PatternWindow::get(std::span<const int> cell) const {
  assert(cell.size() == radius.size());
  assert(cell.size() <= 16);
  std::array<int, 16> idx;
  for (std::size_t a = 0; a < cell.size(); ++a) {
    const int v = cell[a] + radius[a];
    if (v < 0 || v >= grid.extent(static_cast<int>(a))) return false;
    idx[a] = v;
  }
  return grid.get_index(std::span<const int>(idx.data(), cell.size()));
}

PatternWindow seed(const Lattice& lattice, std::span<const int> radius) {
  const int d = lattice_dims(lattice);
  if (static_cast<int>(radius.size()) != d) {
    throw std::invalid_argument("seed radius rank does not match lattice dimension");
  }
  for (int r : radius) {
    if (r < 0) throw std::invalid_argument("seed radius must be nonnegative");
  }
  PatternWindow w;
  w.lattice = lattice;
  w.time = 0;
  w.radius.assign(radius.begin(), radius.end());
  w.grid = BitGrid(extents_for(radius));
  std::vector<int> origin(w.radius.begin(), w.radius.end());
  w.grid.set_index(origin, true);
  return w;
}

PatternWindow seed(const Lattice& lattice, int radius) {
  const std::vector<int> r(lattice_dims(lattice), radius);
  return seed(lattice, r);
}

PatternWindow step(const PatternWindow& w, const Rule& rule, const EngineOptions& opts) {
  if (!(rule.lattice == w.lattice)) {
    throw std::invalid_argument("rule lattice does not match window lattice");
  }
  const Stencil st = expand_stencil(rule);
  const std::vector<int> growth = st.growth();
  for (std::size_t a = 0; a < w.radius.size(); ++a) {
    if (static_cast<long long>(w.time + 1) * growth[a] > w.radius[a]) {
      throw std::domain_error("window too small for the next light cone");
    }
  }
  PatternWindow next;
  next.lattice = w.lattice;
  next.time = w.time + 1;
  next.radius = w.radius;
  next.grid = BitGrid(extents_for(w.radius));
  BitGrid even_buf, odd_buf;
  if (st.parity_split) {
    even_buf = BitGrid(extents_for(w.radius));
    odd_buf = BitGrid(extents_for(w.radius));
  }
  const StepKernel kernel(w.grid, st, w.radius);
  kernel.run(w.grid, next.grid, &even_buf, &odd_buf, opts.threads);
  return next;
}

CountSeries run_counts(const Rule& rule, int horizon, const EngineOptions& opts) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  CountSeries cs;
  cs.rule = rule;
  cs.horizon = horizon;
  cs.num.reserve(horizon + 1);
  cs.cum.reserve(horizon + 1);

  Evolver ev(rule.lattice, expand_stencil(rule), horizon, opts);
  BigInt running = 1;
  cs.num.push_back(1);
  cs.cum.push_back(running);
  for (int n = 1; n <= horizon; ++n) {
    ev.advance();
    const BigInt count = ev.grid().popcount();
    running += count;
    cs.num.push_back(count);
    cs.cum.push_back(running);
  }
  return cs;
}

std::vector<PatternWindow> evolve_history(const Lattice& lattice, const Stencil& stencil,
                                          int horizon, const EngineOptions& opts) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  Evolver ev(lattice, stencil, horizon, opts, static_cast<std::size_t>(horizon) + 1);
  std::vector<PatternWindow> out;
  out.reserve(horizon + 1);
  out.push_back(ev.window());
  for (int n = 1; n <= horizon; ++n) {
    ev.advance();
    out.push_back(ev.window());
  }
  return out;
}

std::vector<PatternWindow> evolve_history(const Rule& rule, int horizon,
                                          const EngineOptions& opts) {
  return evolve_history(rule.lattice, expand_stencil(rule), horizon, opts);
}

int state_at(const Rule& rule, int n, std::span<const int> cell) {
  if (n < 0) throw std::invalid_argument("time step must be nonnegative");
  if (static_cast<int>(cell.size()) != lattice_dims(rule.lattice)) {
    throw std::invalid_argument("cell rank does not match lattice dimension");
  }
  Evolver ev(rule.lattice, expand_stencil(rule), n, {});
  for (int i = 0; i < n; ++i) ev.advance();
  return ev.window().get(cell) ? 1 : 0;
}

std::uint64_t Grid2D::popcount() const {
  std::uint64_t n = 0;
  for (std::uint8_t b : bits) n += b;
  return n;
}

Grid2D slice_2d(const PatternWindow& w, int axis_r, int axis_c, std::span<const int> fixed) {
  const int d = w.grid.dims();
  if (axis_r < 0 || axis_r >= d || axis_c < 0 || axis_c >= d || axis_r == axis_c) {
    throw std::out_of_range("slice axes must be two distinct window axes");
  }
  if (static_cast<int>(fixed.size()) != d - 2) {
    throw std::out_of_range("slice requires one fixed coordinate per remaining axis");
  }

  std::vector<int> cell(d, 0);
  std::size_t fi = 0;
  for (int a = 0; a < d; ++a) {
    if (a == axis_r || a == axis_c) continue;
    const int v = fixed[fi++];
    if (v < -w.radius[a] || v > w.radius[a]) {
      throw std::out_of_range("fixed slice coordinate outside window");
    }
    cell[a] = v;
  }

  Grid2D g;
  g.rows = w.grid.extent(axis_r);
  g.cols = w.grid.extent(axis_c);
  g.row0 = -w.radius[axis_r];
  g.col0 = -w.radius[axis_c];
  g.bits.assign(static_cast<std::size_t>(g.rows) * g.cols, 0);
  for (int r = 0; r < g.rows; ++r) {
    cell[axis_r] = g.row0 + r;
    for (int c = 0; c < g.cols; ++c) {
      cell[axis_c] = g.col0 + c;
      g.bits[static_cast<std::size_t>(r) * g.cols + c] = w.get(cell) ? 1 : 0;
    }
  }
  return g;
}

}  // namespace salemca
