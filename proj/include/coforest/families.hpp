#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coforest/pc_presentation.hpp"

namespace coforest {

/// Parameters of the coclass-1 family G_a^n(z,w):
/// generators x, y, s2..s_{n-1}; n is the logarithmic order.
struct BlackburnParams {
  int n = 3;
  int a = 0;        // {0,1}
  int z = 0;        // {-1,0,1}
  int w = 0;        // {-1,0,1}

  std::string selector() const;
  bool operator==(const BlackburnParams&) const = default;
  bool operator<(const BlackburnParams& o) const;
};

/// Parameters of the coclass >= 2 family G_rho^{m,n}(alpha,beta,gamma,delta):
/// m = cl+1, e = cc+1, n = m+e-2 the logarithmic order.
struct NebelungParams {
  int m = 4;
  int e = 3;
  int rho = 0, alpha = 0, beta = 0, gamma = 0, delta = 0;

  int n() const { return m + e - 2; }
  std::string selector() const;
  bool operator==(const NebelungParams&) const = default;
  bool operator<(const NebelungParams& o) const;
};

/// Family tag + parameters identifying a constructed group.
struct GroupSelector {
  // family 0: Blackburn, 1: Nebelung
  int family = 0;
  BlackburnParams b;
  NebelungParams nb;

  static GroupSelector blackburn(BlackburnParams p) {
    GroupSelector s;
    s.family = 0;
    s.b = p;
    return s;
  }
  static GroupSelector nebelung(NebelungParams p) {
    GroupSelector s;
    s.family = 1;
    s.nb = p;
    return s;
  }
  int order_log() const { return family == 0 ? b.n : nb.n(); }
  std::string str() const { return family == 0 ? b.selector() : nb.selector(); }
  bool operator==(const GroupSelector&) const = default;
  bool operator<(const GroupSelector& o) const;
};

/// Nearly homocyclic abelian 3-group A(3,n): logarithmic type (q+r, q) for
/// n = 2q+r, (1) for n = 1, empty for n = 0.
struct NearlyHomocyclic {
  int n = 0;
  std::vector<int> type;
};

NearlyHomocyclic nearly_homocyclic(int n);

/// Builds the consistent pc presentation; throws std::invalid_argument for
/// parameters outside the admissible ranges, std::logic_error if the
/// constructed presentation fails its consistency gate.
PcPresentation build_blackburn(const BlackburnParams& p);
PcPresentation build_nebelung(const NebelungParams& p);
PcPresentation build(const GroupSelector& s);

bool nebelung_admissible(const NebelungParams& p);

/// All parameter tuples of the coclass-r family with logarithmic order in
/// [min_lo, max_lo], lexicographic order, duplicates not removed. Purely
/// syntactic ranges; tuples presenting a commutator quotient other than
/// (3,3) are rejected only when built.
std::vector<GroupSelector> family_grid(int coclass, int min_lo, int max_lo);

struct BuiltGroup {
  GroupSelector sel;
  PcPresentation pres;
};

/// Builds every grid tuple, keeping the family members (consistent, order
/// 3^n, commutator quotient (3,3)); duplicates are NOT removed.
std::vector<BuiltGroup> enumerate_family(int coclass, int min_lo, int max_lo);

/// Parses "G(n;a;z,w)" or "G(m,n;rho;a,b,g,d)" selector strings.
std::optional<GroupSelector> parse_selector(const std::string& text);

}  // namespace coforest
