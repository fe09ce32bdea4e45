#include "coforest/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace coforest {

namespace {

// exponent k with k*f == -c (mod 3); f in {1,2} is its own inverse mod 3
int kill_exponent(int c, int f) { return ((3 - c) * f) % 3; }

}  // namespace

InducedSubgroup InducedSubgroup::trivial(const PcPresentation&) {
  return InducedSubgroup();
}

InducedSubgroup InducedSubgroup::whole(const PcPresentation& p) {
  InducedSubgroup u;
  for (int i = 0; i < p.ngens(); ++i) {
    u.gens_.push_back(p.gen(i));
    u.depths_.push_back(i);
  }
  return u;
}

bool InducedSubgroup::has_depth(int d) const {
  return std::find(depths_.begin(), depths_.end(), d) != depths_.end();
}

Element InducedSubgroup::sift(const PcPresentation& p, Element w) const {
  return sift_coords(p, std::move(w), nullptr);
}

Element InducedSubgroup::sift_coords(const PcPresentation& p, Element w,
                                     std::vector<int>* coords) const {
  if (coords) coords->assign(gens_.size(), 0);
  for (;;) {
    int d = w.leading();
    if (d < 0) return w;
    auto it = std::lower_bound(depths_.begin(), depths_.end(), d);
    if (it == depths_.end() || *it != d) return w;
    size_t idx = static_cast<size_t>(it - depths_.begin());
    const Element& u = gens_[idx];
    int k = kill_exponent(w.e[d], u.e[d]);
    // record the exponent of u in the decomposition: w = u^(-k)... since we
    // multiply w by u^k to cancel, the coordinate is (3-k) mod 3
    if (coords) (*coords)[idx] = (3 - k) % 3;
    for (int t = 0; t < k; ++t) w = p.mul(w, u);
  }
}

Element InducedSubgroup::coset_reduce(const PcPresentation& p,
                                      Element w) const {
  for (size_t idx = 0; idx < gens_.size(); ++idx) {
    int d = depths_[idx];
    if (!w.e[d]) continue;
    int k = kill_exponent(w.e[d], gens_[idx].e[d]);
    for (int t = 0; t < k; ++t) w = p.mul(w, gens_[idx]);
  }
  return w;
}

void InducedSubgroup::insert(const PcPresentation& p, Element w) {
  int d = w.leading();
  if (d < 0) return;
  auto it = std::lower_bound(depths_.begin(), depths_.end(), d);
  if (it != depths_.end() && *it == d)
    throw std::logic_error("insert into occupied depth");
  size_t idx = static_cast<size_t>(it - depths_.begin());
  depths_.insert(it, d);
  gens_.insert(gens_.begin() + idx, std::move(w));
  (void)p;
}

InducedSubgroup InducedSubgroup::close(const PcPresentation& p,
                                       const std::vector<Element>& seeds,
                                       bool normal) {
  InducedSubgroup u;
  std::deque<Element> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    Element w = queue.front();
    queue.pop_front();
    Element r = u.sift(p, std::move(w));
    if (r.is_identity()) continue;
    // normalize leading exponent to 1 (square if it is 2)
    if (r.e[r.leading()] == 2) r = p.mul(r, r);
    u.insert(p, r);
    queue.push_back(p.mul(p.mul(r, r), r));  // cube
    for (const Element& g : u.gens_) {
      queue.push_back(p.mul(g, r));
      queue.push_back(p.mul(r, g));
      queue.push_back(p.commutator(g, r));
    }
    if (normal) {
      for (int i = 0; i < p.ngens(); ++i) {
        queue.push_back(p.conj(r, p.gen(i)));
        queue.push_back(p.conj(r, p.inv(p.gen(i))));
      }
    }
  }
  // reduce to the canonical echelon form: each generator has exponent 0 at
  // every other occupied depth
  for (size_t i = 0; i < u.gens_.size(); ++i) {
    Element g = u.gens_[i];
    for (size_t j = i + 1; j < u.gens_.size(); ++j) {
      int d = u.depths_[j];
      if (!g.e[d]) continue;
      int k = kill_exponent(g.e[d], u.gens_[j].e[d]);
      for (int t = 0; t < k; ++t) g = p.mul(g, u.gens_[j]);
    }
    u.gens_[i] = g;
  }
  return u;
}

bool InducedSubgroup::contains_subgroup(const PcPresentation& p,
                                        const InducedSubgroup& o) const {
  for (const Element& g : o.gens_)
    if (!contains(p, g)) return false;
  return true;
}

bool InducedSubgroup::equals(const PcPresentation& p,
                             const InducedSubgroup& o) const {
  return order_log() == o.order_log() && contains_subgroup(p, o);
}

bool InducedSubgroup::is_normal(const PcPresentation& p) const {
  for (const Element& g : gens_)
    for (int i = 0; i < p.ngens(); ++i) {
      if (!contains(p, p.conj(g, p.gen(i)))) return false;
      if (!contains(p, p.conj(g, p.inv(p.gen(i))))) return false;
    }
  return true;
}

std::vector<InducedSubgroup> lower_central_series(const PcPresentation& p) {
  std::vector<InducedSubgroup> series;
  series.push_back(InducedSubgroup::whole(p));
  for (;;) {
    const InducedSubgroup& prev = series.back();
    if (prev.order_log() == 0) break;
    std::vector<Element> seeds;
    for (const Element& u : prev.gens())
      for (int i = 0; i < p.ngens(); ++i)
        seeds.push_back(p.commutator(u, p.gen(i)));
    InducedSubgroup next = InducedSubgroup::close(p, seeds, true);
    if (next.order_log() >= prev.order_log())
      throw std::logic_error("lower central series not descending");
    series.push_back(next);
    if (series.back().order_log() == 0) break;
  }
  return series;
}

std::vector<InducedSubgroup> derived_series(const PcPresentation& p) {
  std::vector<InducedSubgroup> series;
  series.push_back(InducedSubgroup::whole(p));
  for (;;) {
    const InducedSubgroup& prev = series.back();
    if (prev.order_log() == 0) break;
    InducedSubgroup next = subgroup_derived(p, prev);
    if (next.order_log() >= prev.order_log())
      throw std::logic_error("derived series not descending");
    series.push_back(next);
    if (series.back().order_log() == 0) break;
  }
  return series;
}

InducedSubgroup derived_subgroup(const PcPresentation& p) {
  return subgroup_derived(p, InducedSubgroup::whole(p));
}

InducedSubgroup subgroup_derived(const PcPresentation& p,
                                 const InducedSubgroup& u) {
  std::vector<Element> seeds;
  const auto& gs = u.gens();
  for (size_t a = 0; a < gs.size(); ++a)
    for (size_t b = a + 1; b < gs.size(); ++b)
      seeds.push_back(p.commutator(gs[a], gs[b]));
  return InducedSubgroup::close(p, seeds, true);
}

InducedSubgroup commutator_subgroup(const PcPresentation& p,
                                    const InducedSubgroup& a,
                                    const InducedSubgroup& b) {
  std::vector<Element> seeds;
  for (const Element& u : a.gens())
    for (const Element& v : b.gens()) seeds.push_back(p.commutator(u, v));
  return InducedSubgroup::close(p, seeds, true);
}

int nilpotency_class(const PcPresentation& p) {
  return static_cast<int>(lower_central_series(p).size()) - 1;
}

int derived_length(const PcPresentation& p) {
  return static_cast<int>(derived_series(p).size()) - 1;
}

namespace {

// F3 kernel basis of the linear map given by row vectors per variable:
// rows[v] is the image of unit vector v; returns echelonized basis vectors.
std::vector<std::vector<int>> f3_kernel(std::vector<std::vector<int>> rows) {
  size_t nvar = rows.size();
  size_t dim = rows.empty() ? 0 : rows[0].size();
  // transpose into matrix with columns = variables
  std::vector<std::vector<int>> m(dim, std::vector<int>(nvar, 0));
  for (size_t v = 0; v < nvar; ++v)
    for (size_t d = 0; d < dim; ++d) m[d][v] = rows[v][d] % 3;
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < nvar && r < dim; ++c) {
    size_t pr = r;
    while (pr < dim && m[pr][c] % 3 == 0) ++pr;
    if (pr == dim) continue;
    std::swap(m[r], m[pr]);
    int inv = m[r][c] % 3;  // 1 or 2, self-inverse
    for (size_t cc = 0; cc < nvar; ++cc) m[r][cc] = (m[r][cc] * inv) % 3;
    for (size_t rr = 0; rr < dim; ++rr) {
      if (rr == r) continue;
      int f = m[rr][c] % 3;
      if (!f)
        continue;
      for (size_t cc = 0; cc < nvar; ++cc)
        m[rr][cc] = ((m[rr][cc] - f * m[r][cc]) % 3 + 3) % 3;
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(nvar, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<int>> basis;
  for (size_t fc = 0; fc < nvar; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<int> vec(nvar, 0);
    vec[fc] = 1;
    for (size_t pr = 0; pr < pivot_col.size(); ++pr)
      vec[pivot_col[pr]] = ((-m[pr][fc]) % 3 + 3) % 3;
    basis.push_back(std::move(vec));
  }
  return basis;
}

}  // namespace

InducedSubgroup centre(const PcPresentation& p) {
  // abelian: centre is the whole group
  bool abelian = true;
  for (int j = 0; j < p.ngens() && abelian; ++j)
    for (int i = 0; i < j && abelian; ++i)
      if (!p.comm_trivial(j, i)) abelian = false;
  if (abelian) return InducedSubgroup::whole(p);

  auto series = lower_central_series(p);
  const InducedSubgroup& last = series[series.size() - 2];  // gamma_c
  for (const Element& u : last.gens())
    if (!p.pow(u, 3).is_identity())
      throw std::logic_error("last lower central term not elementary");

  Quotient q = make_quotient(p, last);
  InducedSubgroup zq = centre(q.group);

  std::vector<Element> pre_seeds;
  for (const Element& z : zq.gens())
    pre_seeds.push_back(q.lift(z, p.ngens()));
  for (const Element& u : last.gens()) pre_seeds.push_back(u);
  InducedSubgroup pre = InducedSubgroup::close(p, pre_seeds, false);

  // kernel of w -> ([w,x],[w,y]) into the elementary abelian last term
  size_t d = last.gens().size();
  std::vector<std::vector<int>> rows;
  for (const Element& g : pre.gens()) {
    std::vector<int> row(2 * d, 0);
    for (int s = 0; s < 2; ++s) {
      Element c = p.commutator(g, p.gen(s));
      std::vector<int> coords;
      Element r = last.sift_coords(p, c, &coords);
      if (!r.is_identity())
        throw std::logic_error("commutator escapes central layer");
      for (size_t t = 0; t < d; ++t) row[s * d + t] = coords[t];
    }
    rows.push_back(std::move(row));
  }
  auto basis = f3_kernel(std::move(rows));
  std::vector<Element> zgens;
  for (const auto& vec : basis) {
    Element w = Element::identity(p.ngens());
    for (size_t v = 0; v < vec.size(); ++v)
      for (int t = 0; t < vec[v]; ++t) w = p.mul(w, pre.gens()[v]);
    zgens.push_back(w);
  }
  return InducedSubgroup::close(p, zgens, false);
}

Element Quotient::project(const PcPresentation& parent,
                          const InducedSubgroup& n, const Element& w) const {
  Element r = n.coset_reduce(parent, w);
  Element out = Element::identity(group.ngens());
  for (size_t i = 0; i < kept.size(); ++i) out.e[i] = r.e[kept[i]];
  return out;
}

Element Quotient::lift(const Element& w, int parent_ngens) const {
  Element out = Element::identity(parent_ngens);
  for (size_t i = 0; i < kept.size(); ++i) out.e[kept[i]] = w.e[i];
  return out;
}

Quotient make_quotient(const PcPresentation& p, const InducedSubgroup& n) {
  if (!n.is_normal(p)) throw std::invalid_argument("quotient by non-normal");
  if (n.order_log() == p.ngens())
    throw std::invalid_argument("quotient by the whole group");

  std::vector<int> kept;
  for (int d = 0; d < p.ngens(); ++d)
    if (!n.has_depth(d)) kept.push_back(d);
  int qn = static_cast<int>(kept.size());
  std::vector<int> qidx(p.ngens(), -1);
  for (int i = 0; i < qn; ++i) qidx[kept[i]] = i;

  auto to_q = [&](const Element& w) {
    Element r = n.coset_reduce(p, w);
    Element out = Element::identity(qn);
    for (int i = 0; i < qn; ++i) out.e[i] = r.e[kept[i]];
    return out;
  };

  std::vector<std::string> names;
  std::vector<GenDef> defs;
  for (int d : kept) {
    names.push_back(p.name(d));
    GenDef def = p.defs()[d];
    if (def.kind != GenDef::kGenerator) {
      if (qidx[def.a] < 0 || (def.kind == GenDef::kCommutator && qidx[def.b] < 0))
        throw std::logic_error("definition references a quotiented generator");
      def.a = qidx[def.a];
      if (def.kind == GenDef::kCommutator) def.b = qidx[def.b];
    }
    defs.push_back(def);
  }

  std::vector<Element> power(qn);
  std::vector<std::vector<Element>> comm(qn,
                                         std::vector<Element>(qn, Element::identity(qn)));
  for (int i = 0; i < qn; ++i) power[i] = to_q(p.power(kept[i]));
  for (int j = 0; j < qn; ++j)
    for (int i = 0; i < j; ++i) comm[j][i] = to_q(p.comm(kept[j], kept[i]));

  Quotient q{PcPresentation(std::move(names), std::move(power), std::move(comm),
                            std::move(defs)),
             kept};
  return q;
}

}  // namespace coforest
