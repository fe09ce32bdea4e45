#include <optional>

#include "coforest/isotest.hpp"
#include "doctest.h"

using namespace coforest;

namespace {

// Unpruned oracle: every generator-image pair is tried directly.
std::optional<std::pair<Element, Element>> brute_iso(const PcPresentation& a,
                                                     const PcPresentation& b) {
  if (a.ngens() != b.ngens()) return std::nullopt;
  std::vector<Element> elems;
  Element w = Element::identity(b.ngens());
  for (;;) {
    elems.push_back(w);
    int i = b.ngens() - 1;
    while (i >= 0 && w.e[i] == 2) w.e[i--] = 0;
    if (i < 0) break;
    ++w.e[i];
  }
  for (const Element& u : elems)
    for (const Element& v : elems)
      if (verify_isomorphism(a, b, u, v)) return std::make_pair(u, v);
  return std::nullopt;
}

ClassifiedGroup make(const GroupSelector& s) { return classify(s, build(s)); }

}  // namespace

TEST_SUITE_BEGIN("isotest");

TEST_CASE("fingerprints of literal copies agree") {
  PcPresentation a = build_nebelung({5, 4, 0, 0, 0, 0, 0});
  PcPresentation b = build_nebelung({5, 4, 0, 0, 0, 0, 0});
  CHECK(fingerprint(a) == fingerprint(b));
}

TEST_CASE("order-27 groups with distinct kernels have distinct fingerprints") {
  PcPresentation a = build_blackburn({3, 0, 0, 0});
  PcPresentation b = build_blackburn({3, 0, 0, 1});
  CHECK(!(fingerprint(a) == fingerprint(b)));
  CHECK(isomorphic(a, b).verdict == IsoVerdict::kNo);
}

TEST_CASE("a group is isomorphic to itself") {
  PcPresentation p = build_nebelung({6, 5, 0, 0, -1, 0, 1});
  IsoResult r = isomorphic(p, p, 19683);
  CHECK(r.verdict == IsoVerdict::kYes);
  REQUIRE(r.map.has_value());
  CHECK(verify_isomorphism(p, p, r.map->first, r.map->second));
}

TEST_CASE("the two distinguished coclass-4 roots are not isomorphic") {
  // equal fingerprints, separated only by search
  PcPresentation r2 = build_nebelung({6, 5, 0, 0, -1, 0, 1});
  PcPresentation r3 = build_nebelung({6, 5, 0, 0, 1, 0, 1});
  CHECK(fingerprint(r2) == fingerprint(r3));
  IsoResult r = isomorphic(r2, r3, 19683);
  CHECK(r.verdict == IsoVerdict::kNo);
  // above the bound the same pair is undetermined
  CHECK(isomorphic(r2, r3, 6561).verdict == IsoVerdict::kUndetermined);
}

TEST_CASE("sign of z merges at order 3^5") {
  PcPresentation a = build_blackburn({5, 0, 1, 0});
  PcPresentation b = build_blackburn({5, 0, -1, 0});
  IsoResult r = isomorphic(a, b);
  CHECK(r.verdict == IsoVerdict::kYes);
}

TEST_CASE("agreement with the unpruned oracle") {
  std::vector<GroupSelector> pool;
  for (const auto& s : family_grid(1, 3, 4)) pool.push_back(s);
  pool.push_back(GroupSelector::blackburn({5, 0, 1, 0}));
  pool.push_back(GroupSelector::blackburn({5, 0, -1, 0}));
  pool.push_back(GroupSelector::blackburn({5, 1, 0, 0}));
  pool.push_back(GroupSelector::nebelung({4, 3, 0, 0, 0, 0, 0}));
  pool.push_back(GroupSelector::nebelung({4, 3, 0, 1, 0, -1, 1}));
  std::vector<PcPresentation> built;
  for (const auto& s : pool) built.push_back(build(s));
  int pairs = 0;
  for (size_t i = 0; i < built.size(); ++i)
    for (size_t j = i; j < built.size(); ++j) {
      if (built[i].ngens() != built[j].ngens()) continue;
      ++pairs;
      bool fast = isomorphic(built[i], built[j], 243).verdict == IsoVerdict::kYes;
      bool slow = brute_iso(built[i], built[j]).has_value();
      CAPTURE(pool[i].str());
      CAPTURE(pool[j].str());
      CHECK(fast == slow);
    }
  CHECK(pairs > 20);
}

TEST_CASE("symmetry and transitivity on sample triples") {
  PcPresentation a = build_blackburn({5, 0, 1, 0});
  PcPresentation b = build_blackburn({5, 0, -1, 0});
  CHECK(isomorphic(a, b).verdict == IsoVerdict::kYes);
  CHECK(isomorphic(b, a).verdict == IsoVerdict::kYes);
  PcPresentation c = build_blackburn({5, 0, 1, 0});
  CHECK(isomorphic(a, c).verdict == IsoVerdict::kYes);
  CHECK(isomorphic(b, c).verdict == IsoVerdict::kYes);
}

TEST_CASE("dedup of the coclass-1 layers") {
  const std::vector<std::pair<int, size_t>> expected = {
      {3, 2}, {4, 4}, {5, 6}, {6, 7}};
  for (auto [n, classes] : expected) {
    std::vector<ClassifiedGroup> pool;
    for (const auto& bg : enumerate_family(1, n, n))
      pool.push_back(classify(bg.sel, bg.pres));
    DedupResult d = dedup(pool, 59049);
    CAPTURE(n);
    CHECK(d.reps.size() == classes);
    CHECK(d.certified);
  }
}

TEST_CASE("dedup of the order-3^9 coclass-4 layer finds 27 classes") {
  std::vector<ClassifiedGroup> pool;
  for (const auto& bg : enumerate_family(4, 9, 9))
    pool.push_back(classify(bg.sel, bg.pres));
  DedupResult d = dedup(pool, 19683L * 3);
  CHECK(d.reps.size() == 27);
  CHECK(d.certified);
}

TEST_CASE("dedup of identical copies is a single class") {
  std::vector<ClassifiedGroup> pool;
  for (int i = 0; i < 4; ++i)
    pool.push_back(make(GroupSelector::nebelung({5, 4, 0, 0, 0, 0, 0})));
  DedupResult d = dedup(pool, 6561);
  CHECK(d.reps.size() == 1);
  for (int c : d.class_of) CHECK(c == 0);
}

TEST_SUITE_END();
