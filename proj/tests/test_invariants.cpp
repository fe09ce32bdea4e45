#include <algorithm>
#include <random>
#include <set>

#include "coforest/families.hpp"
#include "coforest/invariants.hpp"
#include "doctest.h"

using namespace coforest;

namespace {

GroupInvariants inv_of(const GroupSelector& s) {
  return compute_invariants(build(s));
}

AbelianType T(const std::string& s) { return AbelianType::parse(s); }

}  // namespace

TEST_SUITE_BEGIN("invariants");

TEST_CASE("abelian type printing and parsing") {
  CHECK(AbelianType{{3, 2}}.str() == "32");
  CHECK(AbelianType{{2, 1, 1, 1}}.str() == "21³");
  CHECK(AbelianType{{1, 1}}.str() == "1²");
  CHECK(AbelianType{}.str() == "0");
  CHECK(T("21³") == AbelianType{{2, 1, 1, 1}});
  CHECK(T("21^3") == AbelianType{{2, 1, 1, 1}});
  CHECK(T("32") == AbelianType{{3, 2}});
  CHECK(T("0") == AbelianType{});
  CHECK(AbelianType::nearly_homocyclic_product(3, 2) == T("21\u00b3"));
  CHECK(AbelianType::nearly_homocyclic_product(4, 3) == T("2³1"));
}

TEST_CASE("transfer kernel type equivalence") {
  auto K = [](const char* s) { return TransferKernelType::parse(s); };
  CHECK(tkt_equivalent(K("(0043)"), K("(0043)")));
  CHECK(tkt_equivalent(K("(0343)"), K("(3043)")));
  CHECK(!tkt_equivalent(K("(0043)"), K("(1111)")));
  CHECK(!tkt_equivalent(K("(0043)"), K("(0034)")));
  CHECK(K("(2000)").canonical_class() == K("(2000)").canonical_class());
}

TEST_CASE("coclass-1 reference rows") {
  struct Row {
    BlackburnParams prm;
    int dl, k, sigma;
    const char *zeta, *tau1, *tau2, *kappa;
  };
  const std::vector<Row> rows = {
      {{2, 0, 0, 0}, 1, 0, 2, "1²", "1", "0", "(0000)"},
      {{3, 0, 0, 0}, 2, 0, 2, "1", "1²", "1", "(0000)"},
      {{3, 0, 0, 1}, 2, 0, 0, "1", "1²", "1", "(1111)"},
      {{4, 0, 0, 0}, 2, 0, 2, "1", "21", "1²", "(0000)"},
      {{4, 0, 0, 1}, 2, 0, 1, "1", "21", "1²", "(1000)"},
      {{4, 0, 1, 0}, 2, 0, 2, "1", "1³", "1²", "(2000)"},
      {{4, 0, -1, 0}, 2, 0, 2, "1", "21", "1²", "(2000)"},
      {{5, 0, 0, 0}, 2, 0, 2, "1", "2²", "21", "(0000)"},
      {{5, 0, 0, 1}, 2, 0, 0, "1", "2²", "21", "(1000)"},
      {{5, 0, 1, 0}, 2, 0, 0, "1", "2²", "21", "(2000)"},
      {{5, 1, 0, -1}, 2, 1, 0, "1", "21", "21", "(0000)"},
      {{5, 1, 0, 0}, 2, 1, 0, "1", "21", "21", "(0000)"},
      {{5, 1, 0, 1}, 2, 1, 0, "1", "21", "21", "(0000)"},
      {{6, 0, 0, 0}, 2, 0, 2, "1", "32", "2²", "(0000)"},
      {{6, 0, 0, 1}, 2, 0, 1, "1", "32", "2²", "(1000)"},
      {{6, 0, 1, 0}, 2, 0, 2, "1", "32", "2²", "(2000)"},
      {{6, 0, -1, 0}, 2, 0, 2, "1", "32", "2²", "(2000)"},
      {{6, 1, 0, 0}, 2, 1, 1, "1", "2²", "2²", "(0000)"},
  };
  for (const Row& r : rows) {
    CAPTURE(r.prm.selector());
    GroupInvariants inv = inv_of(GroupSelector::blackburn(r.prm));
    CHECK(inv.lo == r.prm.n);
    CHECK(inv.cc == 1);
    CHECK(inv.dl == r.dl);
    CHECK(inv.defect == r.k);
    CHECK(inv.zeta == T(r.zeta));
    CHECK(inv.tau1 == T(r.tau1));
    CHECK(inv.tau2 == T(r.tau2));
    CHECK(inv.kappa == TransferKernelType::parse(r.kappa));  // exact mode
    CHECK(inv.sigma() == r.sigma);
  }
}

TEST_CASE("trunk and coclass-4 reference rows") {
  // order 3^7 trunk vertex
  GroupInvariants p7 = inv_of(GroupSelector::nebelung({5, 4, 0, 0, 0, 0, 0}));
  CHECK(p7.cl == 4);
  CHECK(p7.cc == 3);
  CHECK(p7.dl == 2);
  CHECK(p7.zeta == T("1²"));
  CHECK(p7.tau1 == T("2²"));
  CHECK(p7.tau2 == T("21³"));
  CHECK(tkt_equivalent(p7.kappa, TransferKernelType::parse("(0043)")));
  CHECK(p7.sigma() == 2);
  // tau = [A(3,c), A(3,r+1), 1^3, 1^3] with c = 4 = r+1
  std::multiset<AbelianType> tau(p7.tau.begin(), p7.tau.end());
  std::multiset<AbelianType> expect{T("2²"), T("2²"), T("1³"),
                                    T("1³")};
  CHECK(tau == expect);

  GroupInvariants p9 = inv_of(GroupSelector::nebelung({6, 5, 0, 0, 0, 0, 0}));
  CHECK(p9.cl == 5);
  CHECK(p9.cc == 4);
  CHECK(p9.zeta == T("1²"));
  CHECK(p9.tau1 == T("32"));
  CHECK(p9.tau2 == T("2³1"));
  CHECK(tkt_equivalent(p9.kappa, TransferKernelType::parse("(0043)")));

  // order 3^9 needs the V4 bound raised above its default
  InvariantOptions wide;
  wide.v4_bound = 19683 * 3;
  GroupInvariants r24 =
      compute_invariants(build_nebelung({6, 5, 0, 0, -1, 0, 1}), wide);
  CHECK(r24.zeta == T("1²"));
  CHECK(r24.tau1 == T("32"));
  CHECK(r24.tau2 == T("2³1"));
  CHECK(tkt_equivalent(r24.kappa, TransferKernelType::parse("(0343)")));
  CHECK(r24.sigma() == 1);

  GroupInvariants r54 =
      compute_invariants(build_nebelung({6, 5, 0, 0, 1, 0, 0}), wide);
  CHECK(tkt_equivalent(r54.kappa, TransferKernelType::parse("(0143)")));
  CHECK(r54.sigma() == 2);

  GroupInvariants p11 = inv_of(GroupSelector::nebelung({7, 6, 0, 0, 0, 0, 0}));
  CHECK(p11.zeta == T("1²"));
  CHECK(p11.tau1 == T("3²"));
  CHECK(p11.tau2 == T("32³"));
}

TEST_CASE("transfer maps are homomorphisms on all coset pairs") {
  PcPresentation p = build_nebelung({5, 4, 0, 0, 0, 0, 0});
  for (const auto& u : maximal_subgroups(p)) {
    Transfer tr(p, u);
    const InducedSubgroup& up = tr.uprime();
    for (int a1 = 0; a1 < 3; ++a1)
      for (int b1 = 0; b1 < 3; ++b1)
        for (int a2 = 0; a2 < 3; ++a2)
          for (int b2 = 0; b2 < 3; ++b2) {
            // the transfer evaluated on coset products; x^a y^b coset
            // composition adds exponents mod 3
            Element lhs = tr.image((a1 + a2) % 3, (b1 + b2) % 3);
            Element rhs = p.mul(tr.image(a1, b1), tr.image(a2, b2));
            CHECK(up.contains(p, p.mul(lhs, p.inv(rhs))));
          }
  }
}

TEST_CASE("transfer is independent of the transversal choice") {
  PcPresentation p = build_blackburn({5, 0, 1, 0});
  auto subs = maximal_subgroups(p);
  for (const auto& u : subs) {
    Element t1 = u.contains(p, p.gen(0)) ? p.gen(1) : p.gen(0);
    Element t2 = p.mul(t1, p.gen(p.ngens() - 1));  // translate by a deep element
    if (u.contains(p, t2)) continue;
    Transfer tr1(p, u, t1), tr2(p, u, t2);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(tr1.in_kernel(a, b) == tr2.in_kernel(a, b));
  }
}

TEST_CASE("kappa equivalence class survives subgroup reordering") {
  PcPresentation p = build_nebelung({6, 5, 0, 0, -1, 0, 1});
  auto subs = maximal_subgroups(p);
  TransferKernelType base = tkt_for(p, subs);
  std::mt19937 rng(3);
  for (int t = 0; t < 5; ++t) {
    auto shuffled = subs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    TransferKernelType k2 = tkt_for(p, shuffled);
    CHECK(tkt_equivalent(base, k2));
  }
}

TEST_CASE("tau as a multiset ignores subgroup order") {
  PcPresentation p = build_nebelung({6, 5, 0, 1, 1, -1, 1});
  Ttt t = ttt(p);
  long prod = 1;
  for (const auto& ty : t.tau) prod += ty.order_log();
  auto subs = maximal_subgroups(p);
  std::reverse(subs.begin(), subs.end());
  std::multiset<AbelianType> m1(t.tau.begin(), t.tau.end());
  std::multiset<AbelianType> m2;
  long prod2 = 1;
  for (const auto& u : subs) {
    AbelianType ty = abelian_invariants(p, u);
    prod2 += ty.order_log();
    m2.insert(ty);
  }
  CHECK(m1 == m2);
  CHECK(prod == prod2);
}

TEST_CASE("defect of commutativity") {
  CHECK(defect(build_blackburn({3, 0, 0, 0})) == 0);  // class 2 convention
  CHECK(defect(build_blackburn({4, 0, 0, 0})) == 0);
  CHECK(defect(build_blackburn({5, 1, 0, 0})) == 1);
  CHECK(defect(build_blackburn({6, 1, 0, 1})) == 1);
  CHECK(defect(build_nebelung({5, 4, 0, 0, 0, 0, 0})) == 0);
}

TEST_CASE("tau(1) equals A(3, c-k) on the zero-parameter families") {
  for (int n = 3; n <= 8; ++n) {
    GroupInvariants inv = inv_of(GroupSelector::blackburn({n, 0, 0, 0}));
    CHECK(inv.tau1 == AbelianType::of_nearly_homocyclic(inv.cl - inv.defect));
  }
  for (int n = 5; n <= 8; ++n) {
    GroupInvariants inv = inv_of(GroupSelector::blackburn({n, 1, 0, 0}));
    CHECK(inv.defect == 1);
    CHECK(inv.tau1 == AbelianType::of_nearly_homocyclic(inv.cl - 1));
  }
  for (auto [m, e] : std::vector<std::pair<int, int>>{{5, 4}, {6, 5}, {7, 5}}) {
    GroupInvariants inv = inv_of(GroupSelector::nebelung({m, e, 0, 0, 0, 0, 0}));
    CHECK(inv.tau1 ==
          AbelianType::of_nearly_homocyclic(inv.cl - inv.defect));
  }
}

TEST_CASE("action flags") {
  GroupInvariants root = inv_of(GroupSelector::blackburn({2, 0, 0, 0}));
  CHECK(root.gi == Flag::kYes);
  CHECK(root.sigma() == 2);

  GroupInvariants a3 = inv_of(GroupSelector::blackburn({5, 0, 1, 0}));
  CHECK(a3.gi == Flag::kNo);
  CHECK(a3.sigma() == 0);

  // bounds force undetermined rather than a guess
  PcPresentation p7 = build_nebelung({5, 4, 0, 0, 0, 0, 0});
  ActionFlags low = gi_v4_flags(p7, 81, 81);
  CHECK(low.gi == Flag::kUndetermined);
  CHECK(low.v4 == Flag::kUndetermined);
  ActionFlags mid = gi_v4_flags(p7, 59049, 81);
  CHECK(mid.gi == Flag::kYes);
  CHECK(mid.v4 == Flag::kUndetermined);
}

TEST_SUITE_END();
