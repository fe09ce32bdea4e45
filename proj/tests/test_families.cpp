#include "brute.hpp"
#include "coforest/abelian.hpp"
#include "coforest/families.hpp"
#include "coforest/subgroup.hpp"
#include "doctest.h"

using namespace coforest;

namespace {

bool abelianization_is_c3c3(const PcPresentation& p) {
  if (p.ngens() == 2) {
    return p.power(0).is_identity() && p.power(1).is_identity() &&
           p.comm_trivial(1, 0);
  }
  InducedSubgroup d = derived_subgroup(p);
  if (d.order_log() != p.ngens() - 2) return false;
  Quotient q = make_quotient(p, d);
  return q.group.power(0).is_identity() && q.group.power(1).is_identity() &&
         q.group.comm_trivial(1, 0);
}

}  // namespace

TEST_SUITE_BEGIN("families");

TEST_CASE("order-27 and order-243 reference groups are consistent") {
  PcPresentation g27 = build_blackburn({3, 0, 0, 0});
  CHECK(g27.check_consistency().consistent);
  CHECK(g27.order_log() == 3);
  CHECK(brute::all_elements(g27).size() == 27);

  PcPresentation p5 = build_nebelung({4, 3, 0, 0, 0, 0, 0});
  CHECK(p5.check_consistency().consistent);
  CHECK(p5.order_log() == 5);
  CHECK(nilpotency_class(p5) == 3);
}

TEST_CASE("the trunk vertex of order 3^7") {
  PcPresentation p7 = build_nebelung({5, 4, 0, 0, 0, 0, 0});
  CHECK(p7.order_log() == 7);
  CHECK(nilpotency_class(p7) == 4);
  CHECK(p7.order_log() - nilpotency_class(p7) == 3);
  CHECK(derived_length(p7) == 2);
  CHECK(abelianization_is_c3c3(p7));
}

TEST_CASE("class and coclass track m and e") {
  for (auto [m, e] : std::vector<std::pair<int, int>>{
           {4, 3}, {5, 3}, {5, 4}, {6, 4}, {6, 5}, {7, 5}}) {
    PcPresentation p = build_nebelung({m, e, 0, 0, 0, 0, 0});
    CHECK(nilpotency_class(p) == m - 1);
    CHECK(p.ngens() - nilpotency_class(p) == e - 1);
  }
}

TEST_CASE("commutator subgroup type of all-zero presentations") {
  for (auto [m, e] : std::vector<std::pair<int, int>>{{5, 4}, {6, 5}, {7, 5}}) {
    PcPresentation p = build_nebelung({m, e, 0, 0, 0, 0, 0});
    int c = m - 1, r = e - 1;
    AbelianType t = abelian_invariants(p, derived_subgroup(p));
    CHECK(t == AbelianType::nearly_homocyclic_product(c - 1, r - 1));
  }
}

TEST_CASE("every family member is consistent with the right order") {
  for (int r : {1, 2}) {
    int maxlo = r == 1 ? 6 : 7;
    for (const auto& bg : enumerate_family(r, 2, maxlo)) {
      CHECK(bg.pres.order_log() == bg.sel.order_log());
      CHECK(abelianization_is_c3c3(bg.pres));
      if (r == 2) CHECK(derived_length(bg.pres) == 2);
    }
    // the coclass-1 grid never rejects a tuple
    if (r == 1)
      CHECK(enumerate_family(1, 2, maxlo).size() == family_grid(1, 2, maxlo).size());
  }
}

TEST_CASE("tuples with oversized commutator quotient are rejected") {
  // gamma = 1 at (m,e) = (4,3) leaves y^3 alive in the abelianization
  CHECK_THROWS_AS(build_nebelung({4, 3, 0, 0, 0, 1, 0}), std::invalid_argument);
  // rho*beta = 1 at m = 5 likewise
  CHECK_THROWS_AS(build_nebelung({5, 4, 1, 0, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("nearly homocyclic types") {
  CHECK(nearly_homocyclic(0).type.empty());
  CHECK(nearly_homocyclic(1).type == std::vector<int>{1});
  CHECK(nearly_homocyclic(5).type == std::vector<int>{3, 2});
  CHECK_THROWS_AS(nearly_homocyclic(-1), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(build_blackburn({1, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_blackburn({3, 1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_blackburn({4, 1, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_nebelung({4, 4, 0, 0, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_nebelung({3, 3, 0, 0, 0, 0, 0}), std::invalid_argument);
  // sigma_2 reference at m = 4
  CHECK_THROWS_AS(build_nebelung({4, 3, 1, 0, 1, 0, 0}), std::invalid_argument);
  CHECK(nebelung_admissible({4, 3, 1, 0, 0, 0, 0}));
  CHECK(!nebelung_admissible({4, 3, 1, 0, 0, 0, 1}));
}

TEST_CASE("grids contain the all-zero tuples and are lexicographic") {
  auto grid = family_grid(4, 9, 9);
  bool found = false;
  for (const auto& s : grid)
    if (s.family == 1 && s.nb == NebelungParams{6, 5, 0, 0, 0, 0, 0})
      found = true;
  CHECK(found);
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i - 1] < grid[i]);
}

TEST_CASE("selector strings parse bidirectionally") {
  auto s1 = parse_selector("G(5,7;0;0,0,0,0)");
  REQUIRE(s1.has_value());
  CHECK(s1->family == 1);
  CHECK(s1->nb == NebelungParams{5, 4, 0, 0, 0, 0, 0});
  CHECK(s1->str() == "G(5,7;0;0,0,0,0)");

  auto s2 = parse_selector("G(3;0;0,1)");
  REQUIRE(s2.has_value());
  CHECK(s2->family == 0);
  CHECK(s2->b.n == 3);
  CHECK(s2->b.w == 1);
  CHECK(s2->str() == "G(3;0;0,1)");

  CHECK(!parse_selector("H(3;0;0,1)").has_value());
  CHECK(!parse_selector("G(3;0)").has_value());
}

TEST_SUITE_END();
