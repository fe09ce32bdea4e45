#include "coforest/invariants.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "coforest/morphism.hpp"

namespace coforest {

std::string TransferKernelType::str() const {
  std::string s = "(";
  for (int v : kappa) s += char('0' + v);
  return s + ")";
}

TransferKernelType TransferKernelType::parse(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c >= '0' && c <= '4') t += c;
  if (t.size() != 4)
    throw std::invalid_argument("bad transfer kernel type: " + text);
  TransferKernelType k;
  for (int i = 0; i < 4; ++i) k.kappa[i] = t[i] - '0';
  return k;
}

TransferKernelType TransferKernelType::canonical_class() const {
  std::array<int, 4> perm{0, 1, 2, 3};
  TransferKernelType best;
  bool first = true;
  std::array<int, 4> sorted = perm;
  do {
    // positions and nonzero values relabeled simultaneously
    TransferKernelType cand;
    for (int i = 0; i < 4; ++i) {
      int v = kappa[i];
      cand.kappa[sorted[i]] = v == 0 ? 0 : sorted[v - 1] + 1;
    }
    if (first || cand.kappa < best.kappa) {
      best = cand;
      first = false;
    }
  } while (std::next_permutation(sorted.begin(), sorted.end()));
  return best;
}

bool tkt_equivalent(const TransferKernelType& a, const TransferKernelType& b) {
  return a.canonical_class() == b.canonical_class();
}

InducedSubgroup two_step_centralizer(const PcPresentation& p) {
  auto series = lower_central_series(p);
  int c = static_cast<int>(series.size()) - 1;
  if (c < 3) return InducedSubgroup::whole(p);
  const InducedSubgroup& gamma2 = series[1];
  const InducedSubgroup& gamma4 = series[3];

  Quotient q4 = make_quotient(p, gamma4);
  const PcPresentation& q = q4.group;
  // image of gamma_3 in G/gamma_4 (central and elementary there)
  std::vector<Element> l3;
  for (const Element& u : series[2].gens())
    l3.push_back(q4.project(p, gamma4, u));
  InducedSubgroup layer = InducedSubgroup::close(q, l3, false);
  for (const Element& u : layer.gens())
    if (!q.pow(u, 3).is_identity())
      throw std::logic_error("gamma_3/gamma_4 not elementary");

  // kernel of g -> ([g, w_j] mod gamma_4) over the pc generators of G
  std::vector<Element> w_gens;
  for (const Element& w : gamma2.gens())
    w_gens.push_back(q4.project(p, gamma4, w));
  size_t d = layer.gens().size(), nw = w_gens.size();
  int n = p.ngens();
  std::vector<std::vector<int>> img(n, std::vector<int>(nw * d, 0));
  for (int i = 0; i < n; ++i) {
    Element gi = q4.project(p, gamma4, p.gen(i));
    for (size_t j = 0; j < nw; ++j) {
      Element c3 = q.commutator(gi, w_gens[j]);
      std::vector<int> coords;
      Element r = layer.sift_coords(q, c3, &coords);
      if (!r.is_identity())
        throw std::logic_error("[g, gamma_2] outside gamma_3");
      for (size_t t = 0; t < d; ++t) img[i][j * d + t] = coords[t];
    }
  }
  // F3 nullspace over exponents of the pc generators
  size_t dim = nw * d;
  std::vector<std::vector<int>> m(dim, std::vector<int>(n, 0));
  for (int v = 0; v < n; ++v)
    for (size_t t = 0; t < dim; ++t) m[t][v] = img[v][t] % 3;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (int c2 = 0; c2 < n && r < dim; ++c2) {
    size_t pr = r;
    while (pr < dim && m[pr][c2] == 0) ++pr;
    if (pr == dim) continue;
    std::swap(m[r], m[pr]);
    int inv = m[r][c2];
    for (int cc = 0; cc < n; ++cc) m[r][cc] = (m[r][cc] * inv) % 3;
    for (size_t rr = 0; rr < dim; ++rr) {
      if (rr == r) continue;
      int f = m[rr][c2];
      if (!f) continue;
      for (int cc = 0; cc < n; ++cc)
        m[rr][cc] = ((m[rr][cc] - f * m[r][cc]) % 3 + 3) % 3;
    }
    pivot_col.push_back(c2);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c2 : pivot_col) is_pivot[c2] = true;
  std::vector<Element> seeds;
  for (int fc = 0; fc < n; ++fc) {
    if (is_pivot[fc]) continue;
    Element w = p.gen(fc);
    for (size_t pr = 0; pr < pivot_col.size(); ++pr) {
      int coef = ((-m[pr][fc]) % 3 + 3) % 3;
      for (int t = 0; t < coef; ++t) w = p.mul(w, p.gen(pivot_col[pr]));
    }
    seeds.push_back(w);
  }
  // the kernel contains gamma_4 automatically; close to echelonize
  for (const Element& u : gamma4.gens()) seeds.push_back(u);
  return InducedSubgroup::close(p, seeds, false);
}

int defect(const PcPresentation& p) {
  auto series = lower_central_series(p);
  int c = static_cast<int>(series.size()) - 1;
  if (c < 3) return 0;
  InducedSubgroup chi2 = two_step_centralizer(p);
  InducedSubgroup k = commutator_subgroup(p, chi2, series[1]);
  for (int i = 1; i <= c + 1; ++i) {
    if (k.equals(p, series[i - 1])) return c + 1 - i;
  }
  throw std::logic_error("[chi_2, gamma_2] is not a lower central term");
}

std::vector<InducedSubgroup> maximal_subgroups(const PcPresentation& p) {
  InducedSubgroup gprime = derived_subgroup(p);
  if (p.ngens() - gprime.order_log() != 2)
    throw std::invalid_argument("commutator quotient is not of rank 2");

  // coset representatives in the fixed order y, x, xy, xy^2
  std::vector<Element> reps = {p.gen(1), p.gen(0), p.mul(p.gen(0), p.gen(1)),
                               p.mul(p.gen(0), p.mul(p.gen(1), p.gen(1)))};
  std::vector<InducedSubgroup> subs;
  for (const Element& r : reps) {
    std::vector<Element> seeds = gprime.gens();
    seeds.push_back(r);
    subs.push_back(InducedSubgroup::close(p, seeds, false));
  }

  int c = nilpotency_class(p);
  if (c >= 3) {
    InducedSubgroup chi2 = two_step_centralizer(p);
    if (chi2.order_log() == p.ngens() - 1) {
      for (size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].equals(p, chi2)) {
          if (i != 0) std::rotate(subs.begin(), subs.begin() + i, subs.begin() + i + 1);
          break;
        }
      }
    }
  }
  return subs;
}

Transfer::Transfer(const PcPresentation& p, const InducedSubgroup& u)
    : Transfer(p, u,
               u.contains(p, p.gen(0)) ? p.gen(1) : p.gen(0)) {}

Transfer::Transfer(const PcPresentation& p, const InducedSubgroup& u, Element t)
    : p_(p), u_(u), uprime_(subgroup_derived(p, u)) {
  if (u_.contains(p, t))
    throw std::invalid_argument("transversal element lies in the subgroup");
  transversal_[0] = Element::identity(p.ngens());
  transversal_[1] = t;
  transversal_[2] = p.mul(t, t);
}

Element Transfer::image(int a, int b) const {
  Element g = Element::identity(p_.ngens());
  for (int t = 0; t < ((a % 3) + 3) % 3; ++t) g = p_.mul(g, p_.gen(0));
  for (int t = 0; t < ((b % 3) + 3) % 3; ++t) g = p_.mul(g, p_.gen(1));
  Element prod = Element::identity(p_.ngens());
  for (int i = 0; i < 3; ++i) {
    Element tg = p_.mul(transversal_[i], g);
    bool placed = false;
    for (int j = 0; j < 3 && !placed; ++j) {
      Element cand = p_.mul(tg, p_.inv(transversal_[j]));
      if (u_.contains(p_, cand)) {
        prod = p_.mul(prod, cand);
        placed = true;
      }
    }
    if (!placed) throw std::logic_error("transversal does not cover cosets");
  }
  return prod;
}

bool Transfer::in_kernel(int a, int b) const {
  return uprime_.contains(p_, image(a, b));
}

TransferKernelType tkt(const PcPresentation& p) {
  return tkt_for(p, maximal_subgroups(p));
}

TransferKernelType tkt_for(const PcPresentation& p,
                           const std::vector<InducedSubgroup>& maxsubs) {
  // the four order-3 subgroups of the coset plane, in the same base order
  // as the representatives (line through the representative)
  auto line_of = [&](const InducedSubgroup& u) {
    // coordinates of the line: which (a,b) with x^a y^b in U
    std::vector<std::pair<int, int>> pts;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Element g = Element::identity(p.ngens());
        for (int t = 0; t < a; ++t) g = p.mul(g, p.gen(0));
        for (int t = 0; t < b; ++t) g = p.mul(g, p.gen(1));
        if (u.contains(p, g)) pts.emplace_back(a, b);
      }
    return pts;
  };
  std::vector<std::vector<std::pair<int, int>>> lines;
  for (const auto& u : maxsubs) lines.push_back(line_of(u));

  TransferKernelType k;
  for (int i = 0; i < 4; ++i) {
    Transfer tr(p, maxsubs[i]);
    std::vector<std::pair<int, int>> ker;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (tr.in_kernel(a, b)) ker.emplace_back(a, b);
    if (ker.size() == 9) {
      k.kappa[i] = 0;
    } else if (ker.size() == 3) {
      int found = -1;
      for (int j = 0; j < 4 && found < 0; ++j)
        if (lines[j] == ker) found = j;
      if (found < 0) throw std::logic_error("kernel is not a generator line");
      k.kappa[i] = found + 1;
    } else {
      std::ostringstream os;
      os << "transfer kernel of unexpected size " << ker.size();
      throw std::logic_error(os.str());
    }
  }
  return k;
}

Ttt ttt(const PcPresentation& p) {
  Ttt out;
  auto subs = maximal_subgroups(p);
  for (int i = 0; i < 4; ++i) out.tau[i] = abelian_invariants(p, subs[i]);
  out.tau1 = out.tau[0];
  out.tau2 = abelian_invariants(p, derived_subgroup(p));
  return out;
}

ActionFlags gi_v4_flags(const PcPresentation& p, long gi_bound, long v4_bound) {
  ActionFlags f;
  long order = 1;
  for (int i = 0; i < p.ngens(); ++i) {
    order *= 3;
    if (order > (1L << 40)) break;
  }
  if (order > gi_bound) return f;

  GroupChain chain(p);
  bool gi = find_isomorphism(chain, chain, gl23_minus_identity()).has_value();
  f.gi = gi ? Flag::kYes : Flag::kNo;
  if (!gi) {
    f.v4 = Flag::kNo;  // a Klein four group in Aut would induce -I as well
    return f;
  }
  if (order > v4_bound) return f;
  for (const GlMatrix& refl : gl23_reflections()) {
    if (find_isomorphism(chain, chain, refl)) {
      f.v4 = Flag::kYes;
      return f;
    }
  }
  f.v4 = Flag::kNo;
  return f;
}

std::optional<std::pair<Element, Element>> automorphism_with_action(
    const PcPresentation& p, const GlMatrix& mat) {
  GroupChain chain(p);
  return find_isomorphism(chain, chain, mat);
}

GroupInvariants compute_invariants(const PcPresentation& p,
                                   const InvariantOptions& opts) {
  GroupInvariants inv;
  inv.lo = p.ngens();
  inv.cl = nilpotency_class(p);
  inv.cc = inv.lo - inv.cl;
  inv.dl = derived_length(p);
  inv.zeta = abelian_invariants(p, centre(p));
  auto subs = maximal_subgroups(p);
  inv.kappa = tkt_for(p, subs);
  inv.kappa_class = inv.kappa.canonical_class();
  for (int i = 0; i < 4; ++i) inv.tau[i] = abelian_invariants(p, subs[i]);
  inv.tau1 = inv.tau[0];
  inv.tau2 = abelian_invariants(p, derived_subgroup(p));
  inv.defect = defect(p);
  ActionFlags f = gi_v4_flags(p, opts.gi_bound, opts.v4_bound);
  inv.gi = f.gi;
  inv.v4 = f.v4;
  return inv;
}

}  // namespace coforest
