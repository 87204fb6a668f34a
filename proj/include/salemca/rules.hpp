#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace salemca {

enum class LatticeType { Square, Triangular, Hexagonal };

struct Lattice {
  LatticeType type = LatticeType::Square;
  int dim = 1;  // spatial dimension; fixed at 2 for triangular/hexagonal

  static Lattice square(int d);
  static Lattice triangular() { return {LatticeType::Triangular, 2}; }
  static Lattice hexagonal() { return {LatticeType::Hexagonal, 2}; }

  bool operator==(const Lattice&) const = default;
};

using Offset = std::vector<int>;

// The exact set of cells XOR-summed by one local update. Triangular cells
// come in two orientations, so their stencil is split by cell parity
// (parity of i+j selects which offset list applies).
struct Stencil {
  int dims = 0;
  bool parity_split = false;
  std::vector<Offset> offsets;       // all cells, or even-parity cells when split
  std::vector<Offset> offsets_odd;   // odd-parity cells (triangular only)

  // Per-axis light-cone growth: max |offset| along each axis over both lists.
  std::vector<int> growth() const;
};

/// One linear symmetric 2-state radius-1 rule, identified by its lattice and
/// distance-class coefficient bits.
///   square(D):  coeffs[m] = a_m for m = 0..D (m = sum of |e_j|)
///   triangular: coeffs = {center, edge-adjacent, vertex-opposite, vertex-other}
///   hexagonal:  coeffs = {center, first alternating triple, second triple}
struct Rule {
  Lattice lattice;
  std::vector<std::uint8_t> coeffs;
  std::string name;                   // canonical spec string, e.g. "sq:2:010"
  std::vector<std::string> aliases;   // catalog labels: "F:2", "Rule 90", ...
  bool trivial = false;               // zero rule or identity rule

  bool has_alias(std::string_view a) const;
};

// Full catalog for a lattice family, in deterministic order: square rules
// ascend by coefficient bits read as a binary number (a_D..a_0); triangular
// and hexagonal follow their R_n / H_n catalog index.
std::vector<Rule> enumerate_rules(const Lattice& lattice);

Rule make_FD(int d);  // the 2D axis-neighbor rule (a_1 = 1 only)
Rule make_GD(int d);  // the 2^D corner-neighbor rule (a_D = 1 only)
Rule make_square_rule(int d, unsigned coeff_bits);  // bit m of coeff_bits = a_m
Rule triangular_rule(int index);                    // R_0 .. R_13
Rule hexagonal_rule(int index);                     // H_0 .. H_5

Stencil expand_stencil(const Rule& rule);

// Accepts "sq:D:bits" (bits = a_D..a_0), "tri:Rn", "hex:Hn", "F:D", "G:D".
// Throws std::invalid_argument for anything else.
Rule parse_rule(std::string_view spec);

}  // namespace salemca
