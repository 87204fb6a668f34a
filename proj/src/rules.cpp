#include "salemca/rules.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>
#include <utility>

namespace salemca {

namespace {

// Neighborhood geometry, axis order (i, j).
//
// Triangular cells are unit triangles on (i, j) with orientation given by
// the parity of i+j (even = up). The 13-cell neighborhood of an up cell
// splits into symmetry orbits: itself, the 3 edge-adjacent cells, the 3
// cells point-reflected through each vertex, and the remaining 6
// vertex-adjacent cells. Down cells use the point-reflected offsets.
const std::vector<Offset> kTriCenter = {{0, 0}};
const std::vector<Offset> kTriEdgeUp = {{-1, 0}, {0, -1}, {1, 0}};
const std::vector<Offset> kTriOppositeUp = {{-2, -1}, {0, 1}, {2, -1}};
const std::vector<Offset> kTriOtherUp = {{-2, 0}, {-1, -1}, {-1, 1},
                                         {1, -1}, {1, 1},   {2, 0}};

// Hexagonal cells in axial coordinates (q, r); the 6 neighbors in cyclic
// order are (1,0), (1,-1), (0,-1), (-1,0), (-1,1), (0,1). The two
// alternating triples are the orbits of the 3-fold rotation.
const std::vector<Offset> kHexCenter = {{0, 0}};
const std::vector<Offset> kHexTripleA = {{-1, 1}, {0, -1}, {1, 0}};
const std::vector<Offset> kHexTripleB = {{-1, 0}, {0, 1}, {1, -1}};

void append_offsets(std::vector<Offset>& dst, const std::vector<Offset>& src,
                    bool negate = false) {
  for (const Offset& o : src) {
    if (negate) {
      dst.push_back({-o[0], -o[1]});
    } else {
      dst.push_back(o);
    }
  }
}

void sort_offsets(std::vector<Offset>& offsets) {
  std::sort(offsets.begin(), offsets.end());
}

int parse_int(std::string_view s) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad integer in rule spec: '" + std::string(s) + "'");
  }
  return value;
}

[[noreturn]] void bad_spec(std::string_view spec) {
  throw std::invalid_argument("unrecognized rule spec: '" + std::string(spec) + "'");
}

}  // namespace

Lattice Lattice::square(int d) {
  // 16 axes is far beyond anything the memory cap admits; the bound keeps
  // fixed-size index buffers in the engine safe.
  if (d < 1 || d > 16) throw std::invalid_argument("square lattice dimension must be in 1..16");
  return {LatticeType::Square, d};
}

std::vector<int> Stencil::growth() const {
  std::vector<int> g(dims, 0);
  for (const auto* list : {&offsets, &offsets_odd}) {
    for (const Offset& o : *list) {
      for (int a = 0; a < dims; ++a) g[a] = std::max(g[a], std::abs(o[a]));
    }
  }
  return g;
}

bool Rule::has_alias(std::string_view a) const {
  return std::find(aliases.begin(), aliases.end(), a) != aliases.end();
}

Rule make_square_rule(int d, unsigned coeff_bits) {
  if (d < 1) throw std::invalid_argument("square rule dimension must be >= 1");
  if (coeff_bits >= (1u << (d + 1))) {
    throw std::invalid_argument("square rule coefficient bits out of range");
  }
  Rule r;
  r.lattice = Lattice::square(d);
  r.coeffs.resize(d + 1);
  for (int m = 0; m <= d; ++m) r.coeffs[m] = (coeff_bits >> m) & 1u;

  std::string bits(d + 1, '0');
  for (int m = 0; m <= d; ++m) bits[d - m] = r.coeffs[m] ? '1' : '0';
  r.name = "sq:" + std::to_string(d) + ":" + bits;

  r.trivial = coeff_bits == 0 || coeff_bits == 1;
  if (coeff_bits == 2u) r.aliases.push_back("F:" + std::to_string(d));
  if (coeff_bits == (1u << d)) r.aliases.push_back("G:" + std::to_string(d));
  if (d == 1) {
    // 1-D catalog labels (Wolfram numbers as published).
    static const char* kWolfram[4] = {"Rule 0", "Rule 240", "Rule 90", "Rule 150"};
    r.aliases.push_back(kWolfram[coeff_bits]);
  }
  return r;
}

Rule make_FD(int d) {
  if (d < 1) throw std::invalid_argument("F_D requires D >= 1");
  return make_square_rule(d, 2u);
}

Rule make_GD(int d) {
  if (d < 1) throw std::invalid_argument("G_D requires D >= 1");
  return make_square_rule(d, 1u << d);
}

Rule triangular_rule(int index) {
  if (index < 0 || index > 13) throw std::invalid_argument("triangular catalog index must be 0..13");
  // Group masks in catalog order; bit 0 = center, 1 = edge, 2 = vertex-opposite,
  // 3 = vertex-other. The catalog pairs the edge and vertex-opposite groups
  // only together with the vertex-other group, hence the gap at 6 and 7.
  static const unsigned kMasks[14] = {0, 1, 2, 3, 4, 5, 8, 9, 10, 11, 12, 13, 14, 15};
  const unsigned mask = kMasks[index];
  Rule r;
  r.lattice = Lattice::triangular();
  r.coeffs = {static_cast<std::uint8_t>(mask & 1), static_cast<std::uint8_t>((mask >> 1) & 1),
              static_cast<std::uint8_t>((mask >> 2) & 1), static_cast<std::uint8_t>((mask >> 3) & 1)};
  r.name = "tri:R" + std::to_string(index);
  r.trivial = index <= 1;
  return r;
}

Rule hexagonal_rule(int index) {
  if (index < 0 || index > 5) throw std::invalid_argument("hexagonal catalog index must be 0..5");
  // coeffs = {center, triple A, triple B} per catalog slot.
  static const std::uint8_t kCoeffs[6][3] = {
      {0, 0, 0},  // H_0: zero rule
      {1, 0, 0},  // H_1: identity
      {1, 1, 0},  // H_2: center plus alternating triple
      {0, 1, 0},  // H_3: alternating triple
      {0, 1, 1},  // H_4: all six neighbors
      {1, 1, 1},  // H_5: full 7-cell neighborhood
  };
  Rule r;
  r.lattice = Lattice::hexagonal();
  r.coeffs = {kCoeffs[index][0], kCoeffs[index][1], kCoeffs[index][2]};
  r.name = "hex:H" + std::to_string(index);
  r.trivial = index <= 1;
  return r;
}

std::vector<Rule> enumerate_rules(const Lattice& lattice) {
  std::vector<Rule> rules;
  switch (lattice.type) {
    case LatticeType::Square: {
      const int d = lattice.dim;
      if (d < 1) throw std::invalid_argument("square lattice dimension must be >= 1");
      const unsigned count = 1u << (d + 1);
      rules.reserve(count);
      for (unsigned bits = 0; bits < count; ++bits) rules.push_back(make_square_rule(d, bits));
      break;
    }
    case LatticeType::Triangular:
      rules.reserve(14);
      for (int i = 0; i < 14; ++i) rules.push_back(triangular_rule(i));
      break;
    case LatticeType::Hexagonal:
      rules.reserve(6);
      for (int i = 0; i < 6; ++i) rules.push_back(hexagonal_rule(i));
      break;
  }
  return rules;
}

Stencil expand_stencil(const Rule& rule) {
  Stencil s;
  switch (rule.lattice.type) {
    case LatticeType::Square: {
      const int d = rule.lattice.dim;
      s.dims = d;
      // Walk {-1,0,1}^D; a cell joins the stencil iff the coefficient of its
      // distance class (sum of |e_j|) is set.
      Offset e(d, -1);
      while (true) {
        int cls = 0;
        for (int v : e) cls += std::abs(v);
        if (rule.coeffs[cls]) s.offsets.push_back(e);
        int axis = d - 1;
        while (axis >= 0 && e[axis] == 1) e[axis--] = -1;
        if (axis < 0) break;
        ++e[axis];
      }
      break;
    }
    case LatticeType::Triangular: {
      s.dims = 2;
      s.parity_split = true;
      const std::vector<Offset>* groups[4] = {&kTriCenter, &kTriEdgeUp, &kTriOppositeUp,
                                              &kTriOtherUp};
      for (int g = 0; g < 4; ++g) {
        if (!rule.coeffs[g]) continue;
        append_offsets(s.offsets, *groups[g]);
        append_offsets(s.offsets_odd, *groups[g], /*negate=*/true);
      }
      sort_offsets(s.offsets);
      sort_offsets(s.offsets_odd);
      break;
    }
    case LatticeType::Hexagonal: {
      s.dims = 2;
      if (rule.coeffs[0]) append_offsets(s.offsets, kHexCenter);
      if (rule.coeffs[1]) append_offsets(s.offsets, kHexTripleA);
      if (rule.coeffs[2]) append_offsets(s.offsets, kHexTripleB);
      sort_offsets(s.offsets);
      break;
    }
  }
  return s;
}

Rule parse_rule(std::string_view spec) {
  const auto split = [&](std::string_view s) {
    std::vector<std::string_view> parts;
    while (true) {
      const auto pos = s.find(':');
      if (pos == std::string_view::npos) {
        parts.push_back(s);
        return parts;
      }
      parts.push_back(s.substr(0, pos));
      s = s.substr(pos + 1);
    }
  };
  const auto parts = split(spec);

  if (parts.size() == 2 && (parts[0] == "F" || parts[0] == "G")) {
    const int d = parse_int(parts[1]);
    if (d < 1) bad_spec(spec);
    return parts[0] == "F" ? make_FD(d) : make_GD(d);
  }
  if (parts.size() == 3 && parts[0] == "sq") {
    const int d = parse_int(parts[1]);
    if (d < 1) bad_spec(spec);
    const std::string_view bits = parts[2];
    if (static_cast<int>(bits.size()) != d + 1) bad_spec(spec);
    unsigned coeff_bits = 0;
    for (int m = 0; m <= d; ++m) {
      const char c = bits[d - m];
      if (c != '0' && c != '1') bad_spec(spec);
      if (c == '1') coeff_bits |= 1u << m;
    }
    return make_square_rule(d, coeff_bits);
  }
  if (parts.size() == 2 && parts[0] == "tri") {
    if (parts[1].size() < 2 || parts[1][0] != 'R') bad_spec(spec);
    const int idx = parse_int(parts[1].substr(1));
    if (idx < 0 || idx > 13) bad_spec(spec);
    return triangular_rule(idx);
  }
  if (parts.size() == 2 && parts[0] == "hex") {
    if (parts[1].size() < 2 || parts[1][0] != 'H') bad_spec(spec);
    const int idx = parse_int(parts[1].substr(1));
    if (idx < 0 || idx > 5) bad_spec(spec);
    return hexagonal_rule(idx);
  }
  bad_spec(spec);
}

}  // namespace salemca
