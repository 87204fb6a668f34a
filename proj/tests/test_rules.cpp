#include "salemca/rules.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace salemca;

namespace {

std::set<Offset> offset_set(const std::vector<Offset>& v) { return {v.begin(), v.end()}; }

// All coordinate sign flips and axis permutations of an offset.
std::set<Offset> symmetry_orbit(const Offset& o) {
  std::set<Offset> orbit;
  std::vector<int> perm(o.size());
  for (std::size_t i = 0; i < o.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    Offset base(o.size());
    for (std::size_t i = 0; i < o.size(); ++i) base[i] = o[perm[i]];
    const std::size_t n = o.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      Offset flipped = base;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) flipped[i] = -flipped[i];
      }
      orbit.insert(flipped);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return orbit;
}

}  // namespace

TEST_CASE("square catalog sizes and trivial flags") {
  for (int d = 1; d <= 5; ++d) {
    const auto rules = enumerate_rules(Lattice::square(d));
    CHECK(rules.size() == (std::size_t{1} << (d + 1)));
    const auto trivial = std::count_if(rules.begin(), rules.end(),
                                       [](const Rule& r) { return r.trivial; });
    CHECK(trivial == 2);
  }
}

TEST_CASE("one-dimensional catalog carries the published labels") {
  const auto rules = enumerate_rules(Lattice::square(1));
  REQUIRE(rules.size() == 4);
  CHECK(rules[0].has_alias("Rule 0"));
  CHECK(rules[1].has_alias("Rule 240"));
  CHECK(rules[2].has_alias("Rule 90"));
  CHECK(rules[3].has_alias("Rule 150"));
  CHECK(rules[2].has_alias("F:1"));
  CHECK(rules[2].has_alias("G:1"));
  CHECK(rules[0].trivial);
  CHECK(rules[1].trivial);
  CHECK_FALSE(rules[2].trivial);
  CHECK_FALSE(rules[3].trivial);
}

TEST_CASE("two-dimensional catalog matches the coefficient table") {
  const auto rules = enumerate_rules(Lattice::square(2));
  REQUIRE(rules.size() == 8);
  // stencil sizes for (a2,a1,a0) = 000..111
  const std::size_t expected_sizes[8] = {0, 1, 4, 5, 4, 5, 8, 9};
  for (int i = 0; i < 8; ++i) {
    CHECK(expand_stencil(rules[i]).offsets.size() == expected_sizes[i]);
  }
  CHECK(rules[2].has_alias("F:2"));
  CHECK(rules[4].has_alias("G:2"));
  CHECK(rules[2].name == "sq:2:010");
  CHECK(rules[4].name == "sq:2:100");
}

TEST_CASE("axis rule F_D") {
  CHECK(make_FD(1).has_alias("Rule 90"));
  CHECK(make_FD(2).coeffs == std::vector<std::uint8_t>{0, 1, 0});
  const Stencil s3 = expand_stencil(make_FD(3));
  CHECK(s3.offsets.size() == 6);
  CHECK(offset_set(s3.offsets) ==
        std::set<Offset>{{-1, 0, 0}, {1, 0, 0}, {0, -1, 0}, {0, 1, 0}, {0, 0, -1}, {0, 0, 1}});
  CHECK_THROWS_AS(make_FD(0), std::invalid_argument);
  CHECK_THROWS_AS(make_FD(17), std::invalid_argument);  // engine dimension bound
  for (int d = 1; d <= 5; ++d) {
    CHECK(expand_stencil(make_FD(d)).offsets.size() == std::size_t(2 * d));
  }
}

TEST_CASE("corner rule G_D") {
  CHECK(make_GD(1).has_alias("Rule 90"));
  CHECK(make_GD(2).coeffs == std::vector<std::uint8_t>{0, 0, 1});
  const Stencil s2 = expand_stencil(make_GD(2));
  CHECK(offset_set(s2.offsets) == std::set<Offset>{{-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
  const Stencil s3 = expand_stencil(make_GD(3));
  CHECK(s3.offsets.size() == 8);
  for (const Offset& o : s3.offsets) {
    for (int v : o) CHECK(std::abs(v) == 1);
  }
  CHECK_THROWS_AS(make_GD(0), std::invalid_argument);
  for (int d = 1; d <= 5; ++d) {
    CHECK(expand_stencil(make_GD(d)).offsets.size() == (std::size_t{1} << d));
  }
}

TEST_CASE("square stencils are closed under the symmetry group") {
  for (int d = 2; d <= 4; ++d) {
    for (const Rule& r : enumerate_rules(Lattice::square(d))) {
      const auto set = offset_set(expand_stencil(r).offsets);
      for (const Offset& o : set) {
        for (const Offset& image : symmetry_orbit(o)) {
          CHECK(set.count(image) == 1);
        }
      }
    }
  }
}

TEST_CASE("full Moore is covered by the all-ones rule") {
  const auto s = expand_stencil(make_square_rule(2, 0b111));
  CHECK(s.offsets.size() == 9);
}

TEST_CASE("enumeration is deterministic") {
  for (const Lattice& lat :
       {Lattice::square(3), Lattice::triangular(), Lattice::hexagonal()}) {
    const auto a = enumerate_rules(lat);
    const auto b = enumerate_rules(lat);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].name == b[i].name);
      CHECK(a[i].coeffs == b[i].coeffs);
    }
  }
}

TEST_CASE("triangular catalog") {
  const auto rules = enumerate_rules(Lattice::triangular());
  REQUIRE(rules.size() == 14);
  CHECK(rules[0].trivial);
  CHECK(rules[1].trivial);
  CHECK(std::none_of(rules.begin() + 2, rules.end(), [](const Rule& r) { return r.trivial; }));

  const Stencil edge = expand_stencil(rules[2]);  // R_2
  CHECK(edge.parity_split);
  CHECK(offset_set(edge.offsets) == std::set<Offset>{{-1, 0}, {0, -1}, {1, 0}});
  CHECK(offset_set(edge.offsets_odd) == std::set<Offset>{{-1, 0}, {0, 1}, {1, 0}});

  const Stencil opp = expand_stencil(rules[4]);  // R_4
  CHECK(offset_set(opp.offsets) == std::set<Offset>{{-2, -1}, {0, 1}, {2, -1}});
  CHECK(offset_set(opp.offsets_odd) == std::set<Offset>{{-2, 1}, {0, -1}, {2, 1}});

  const Stencil full = expand_stencil(rules[13]);  // R_13
  CHECK(full.offsets.size() == 13);
  CHECK(full.offsets_odd.size() == 13);
  // growth: two columns sideways, one row vertically
  CHECK(full.growth() == std::vector<int>{2, 1});

  // the six remaining vertex neighbors form a point-symmetric set
  const Stencil other = expand_stencil(rules[6]);  // R_6
  CHECK(other.offsets.size() == 6);
  CHECK(offset_set(other.offsets) == offset_set(other.offsets_odd));
}

TEST_CASE("hexagonal catalog") {
  const auto rules = enumerate_rules(Lattice::hexagonal());
  REQUIRE(rules.size() == 6);
  CHECK(rules[0].trivial);
  CHECK(rules[1].trivial);
  const std::size_t sizes[6] = {0, 1, 4, 3, 6, 7};
  for (int i = 0; i < 6; ++i) {
    const Stencil s = expand_stencil(rules[i]);
    CHECK_FALSE(s.parity_split);
    CHECK(s.offsets.size() == sizes[i]);
  }
  CHECK(offset_set(expand_stencil(rules[3]).offsets) ==
        std::set<Offset>{{-1, 1}, {0, -1}, {1, 0}});
}

TEST_CASE("catalog names parse back to the same rule") {
  for (const Lattice& lat : {Lattice::square(1), Lattice::square(4), Lattice::triangular(),
                             Lattice::hexagonal()}) {
    for (const Rule& r : enumerate_rules(lat)) {
      const Rule parsed = parse_rule(r.name);
      CHECK(parsed.coeffs == r.coeffs);
      CHECK(parsed.lattice == r.lattice);
      CHECK(parsed.trivial == r.trivial);
      CHECK(parsed.aliases == r.aliases);
    }
  }
}

TEST_CASE("rule spec parsing") {
  CHECK(parse_rule("F:2").name == "sq:2:010");
  CHECK(parse_rule("G:3").name == "sq:3:1000");
  CHECK(parse_rule("sq:1:10").has_alias("Rule 90"));
  CHECK(parse_rule("sq:2:010").has_alias("F:2"));
  CHECK(parse_rule("tri:R7").name == "tri:R7");
  CHECK(parse_rule("hex:H3").name == "hex:H3");

  for (const char* bad : {"", "F", "F:0", "F:x", "sq:2:01", "sq:2:0102", "sq:2:012",
                          "sq:0:1", "tri:R14", "tri:X1", "hex:H6", "hex:6", "cube:1:1",
                          "sq:2:010:extra"}) {
    CHECK_THROWS_AS(parse_rule(bad), std::invalid_argument);
  }
}
