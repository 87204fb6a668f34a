#pragma once

// Reference evolver used only by tests: a dense byte grid updated by direct
// per-cell loops. Kept deliberately slow and obvious so it can stand as an
// independent oracle for the bit-packed engine.

#include "salemca/rules.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace naive {

struct Config {
  std::vector<int> radius;
  std::vector<std::uint8_t> cells;  // row-major over [-r_a, +r_a]

  std::size_t index_of(std::span<const int> cell) const {
    std::size_t idx = 0;
    for (std::size_t a = 0; a < radius.size(); ++a) {
      idx = idx * (2 * radius[a] + 1) + static_cast<std::size_t>(cell[a] + radius[a]);
    }
    return idx;
  }

  int at(std::span<const int> cell) const {
    for (std::size_t a = 0; a < radius.size(); ++a) {
      if (cell[a] < -radius[a] || cell[a] > radius[a]) return 0;
    }
    return cells[index_of(cell)];
  }

  std::uint64_t popcount() const {
    std::uint64_t n = 0;
    for (auto c : cells) n += c;
    return n;
  }
};

inline Config make_seed(std::vector<int> radius) {
  Config c;
  c.radius = std::move(radius);
  std::size_t total = 1;
  for (int r : c.radius) total *= static_cast<std::size_t>(2 * r + 1);
  c.cells.assign(total, 0);
  const std::vector<int> origin(c.radius.size(), 0);
  c.cells[c.index_of(origin)] = 1;
  return c;
}

inline Config step(const Config& src, const salemca::Stencil& st) {
  Config dst = src;
  std::fill(dst.cells.begin(), dst.cells.end(), 0);
  const int d = static_cast<int>(src.radius.size());
  std::vector<int> cell(d), probe(d);
  for (int a = 0; a < d; ++a) cell[a] = -src.radius[a];
  while (true) {
    const bool odd_parity = st.parity_split && ((cell[0] + cell[1]) & 1) != 0;
    const auto& offsets = odd_parity ? st.offsets_odd : st.offsets;
    int sum = 0;
    for (const salemca::Offset& v : offsets) {
      for (int a = 0; a < d; ++a) probe[a] = cell[a] + v[a];
      sum ^= src.at(probe);
    }
    dst.cells[dst.index_of(cell)] = static_cast<std::uint8_t>(sum);

    int axis = d - 1;
    while (axis >= 0 && cell[axis] == src.radius[axis]) {
      cell[axis] = -src.radius[axis];
      --axis;
    }
    if (axis < 0) break;
    ++cell[axis];
  }
  return dst;
}

}  // namespace naive
