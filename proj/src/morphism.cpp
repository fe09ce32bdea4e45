#include "coforest/morphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace coforest {

namespace {

constexpr long kFrontierCap = 200000;

int det3(const GlMatrix& m) {
  int d = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) % 3;
  return (d + 3) % 3;
}

GlMatrix matmul(const GlMatrix& a, const GlMatrix& b) {
  GlMatrix r{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % 3;
  return r;
}

bool is_identity_mat(const GlMatrix& m) {
  return m[0][0] % 3 == 1 && m[1][1] % 3 == 1 && m[0][1] % 3 == 0 &&
         m[1][0] % 3 == 0;
}

// Computes the images of every generator of `dom` under the map sending the
// two group generators to (a, b), using the definition dag; returns false
// when some relation of `dom` fails in `codom`.
bool images_and_check(const PcPresentation& dom, const PcPresentation& codom,
                      const Element& a, const Element& b,
                      std::vector<Element>& img) {
  int n = dom.ngens();
  img.assign(n, Element::identity(codom.ngens()));
  img[0] = a;
  if (n > 1) img[1] = b;
  for (int i = 2; i < n; ++i) {
    const GenDef& d = dom.defs()[i];
    if (d.kind == GenDef::kCommutator)
      img[i] = codom.commutator(img[d.a], img[d.b]);
    else if (d.kind == GenDef::kPower)
      img[i] = codom.pow(img[d.a], 3);
    else
      throw std::logic_error("generator beyond x,y without definition");
  }
  auto word_image = [&](const Element& w) {
    Element r = Element::identity(codom.ngens());
    for (int k = 0; k < n; ++k)
      for (int t = 0; t < w.e[k]; ++t) r = codom.mul(r, img[k]);
    return r;
  };
  for (int i = 0; i < n; ++i) {
    if (codom.pow(img[i], 3) != word_image(dom.power(i))) return false;
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      if (dom.comm_trivial(j, i) && codom.commutator(img[j], img[i]).is_identity())
        continue;
      if (codom.commutator(img[j], img[i]) != word_image(dom.comm(j, i)))
        return false;
    }
  return true;
}

}  // namespace

std::vector<GlMatrix> gl23_all() {
  std::vector<GlMatrix> out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          GlMatrix m{{{a, b}, {c, d}}};
          if (det3(m) != 0) out.push_back(m);
        }
  return out;
}

GlMatrix gl23_minus_identity() { return GlMatrix{{{2, 0}, {0, 2}}}; }

std::vector<GlMatrix> gl23_reflections() {
  std::vector<GlMatrix> out;
  for (const GlMatrix& m : gl23_all()) {
    if (is_identity_mat(m)) continue;
    GlMatrix mm = gl23_minus_identity();
    if (m == mm) continue;
    if (is_identity_mat(matmul(m, m))) out.push_back(m);
  }
  return out;
}

GroupChain::GroupChain(const PcPresentation& g) : g_(g) {
  auto gamma = lower_central_series(g_);
  cls_ = static_cast<int>(gamma.size()) - 1;
  layer_logs_.push_back(g_.ngens() - (cls_ >= 1 ? gamma[1].order_log() : 0));
  for (int i = 1; i <= cls_; ++i)
    layer_logs_.push_back(gamma[i - 1].order_log() - gamma[i].order_log());

  if (cls_ <= 1) return;  // abelian: no lifting levels

  // previous level's centre, in the previous level's coordinates
  std::vector<Element> prev_centre;
  std::vector<int> prev_kept;
  {
    // level t=2 is G/gamma_2, abelian; its centre is everything
    Quotient q2 = make_quotient(g_, gamma[1]);
    for (int i = 0; i < q2.group.ngens(); ++i)
      prev_centre.push_back(q2.group.gen(i));
    prev_kept = q2.kept;
  }

  for (int t = 3; t <= cls_ + 1; ++t) {
    Level lv;
    const PcPresentation* cur;
    if (t == cls_ + 1) {
      lv.kept.resize(g_.ngens());
      for (int i = 0; i < g_.ngens(); ++i) lv.kept[i] = i;
      cur = &g_;
    } else {
      Quotient q = make_quotient(g_, gamma[t - 1]);
      lv.kept = q.kept;
      lv.pres = std::make_unique<PcPresentation>(std::move(q.group));
      cur = lv.pres.get();
    }
    // layer = image of gamma_{t-1} in this level
    std::vector<int> pos_of_depth(g_.ngens(), -1);
    for (size_t i = 0; i < lv.kept.size(); ++i) pos_of_depth[lv.kept[i]] = int(i);
    auto project_here = [&](const Element& w) {
      // w must already be reduced to kept depths by construction of the
      // gamma generators? Not necessarily: coset-reduce against gamma[t-1].
      Element r = gamma[t - 1].coset_reduce(g_, w);
      Element out = Element::identity(cur->ngens());
      for (size_t i = 0; i < lv.kept.size(); ++i) out.e[i] = r.e[lv.kept[i]];
      return out;
    };
    std::vector<Element> layer_seeds;
    for (const Element& u : gamma[t - 2].gens())
      layer_seeds.push_back(project_here(u));
    lv.layer_sub = InducedSubgroup::close(*cur, layer_seeds, false);
    lv.layer = lv.layer_sub.gens();
    for (const Element& u : lv.layer)
      if (!cur->pow(u, 3).is_identity())
        throw std::logic_error("lower central layer not elementary");

    // centralizer = preimage of the previous level's centre
    std::vector<Element> cz_seeds;
    {
      std::vector<int> pos_prev(g_.ngens(), -1);
      for (size_t i = 0; i < prev_kept.size(); ++i) pos_prev[prev_kept[i]] = int(i);
      for (const Element& z : prev_centre) {
        Element up = Element::identity(g_.ngens());
        for (size_t i = 0; i < prev_kept.size(); ++i)
          up.e[prev_kept[i]] = z.e[i];
        cz_seeds.push_back(project_here(up));
      }
      for (const Element& u : lv.layer) cz_seeds.push_back(u);
    }
    InducedSubgroup cz = InducedSubgroup::close(*cur, cz_seeds, false);
    lv.centralizer = cz.gens();

    // centre of this level for the next iteration: kernel of
    // w -> ([w,x],[w,y]) restricted to the centralizer
    {
      const auto& gs = lv.centralizer;
      size_t d = lv.layer.size();
      std::vector<std::vector<int>> rows;
      for (const Element& h : gs) {
        std::vector<int> row(2 * d, 0);
        bool ok = true;
        for (int s = 0; s < 2 && ok; ++s) {
          Element c = cur->commutator(h, cur->gen(s));
          std::vector<int> coords;
          Element rr = lv.layer_sub.sift_coords(*cur, c, &coords);
          if (!rr.is_identity()) ok = false;
          for (size_t q = 0; q < d && ok; ++q) row[s * d + q] = coords[q];
        }
        if (!ok) throw std::logic_error("centralizer commutator outside layer");
        rows.push_back(std::move(row));
      }
      // F3 kernel
      size_t nvar = rows.size();
      size_t dim = 2 * d;
      std::vector<std::vector<int>> m(dim, std::vector<int>(nvar, 0));
      for (size_t v = 0; v < nvar; ++v)
        for (size_t q = 0; q < dim; ++q) m[q][v] = rows[v][q] % 3;
      std::vector<int> pivot_col;
      size_t rr = 0;
      for (size_t c = 0; c < nvar && rr < dim; ++c) {
        size_t pr = rr;
        while (pr < dim && m[pr][c] == 0) ++pr;
        if (pr == dim) continue;
        std::swap(m[rr], m[pr]);
        int inv = m[rr][c];
        for (size_t cc2 = 0; cc2 < nvar; ++cc2) m[rr][cc2] = (m[rr][cc2] * inv) % 3;
        for (size_t r2 = 0; r2 < dim; ++r2) {
          if (r2 == rr) continue;
          int f = m[r2][c];
          if (!f) continue;
          for (size_t cc2 = 0; cc2 < nvar; ++cc2)
            m[r2][cc2] = ((m[r2][cc2] - f * m[rr][cc2]) % 3 + 3) % 3;
        }
        pivot_col.push_back(int(c));
        ++rr;
      }
      std::vector<bool> is_pivot(nvar, false);
      for (int c : pivot_col) is_pivot[c] = true;
      std::vector<Element> zgens;
      for (size_t fc = 0; fc < nvar; ++fc) {
        if (is_pivot[fc]) continue;
        Element w = Element::identity(cur->ngens());
        w = gs[fc];
        for (size_t pr2 = 0; pr2 < pivot_col.size(); ++pr2) {
          int coef = ((-m[pr2][fc]) % 3 + 3) % 3;
          for (int tt = 0; tt < coef; ++tt) w = cur->mul(w, gs[pivot_col[pr2]]);
        }
        zgens.push_back(w);
      }
      InducedSubgroup z = InducedSubgroup::close(*cur, zgens, false);
      prev_centre = z.gens();
      prev_kept = lv.kept;
    }

    levels_.push_back(std::move(lv));
  }
}

namespace {

// Reduces the 2d-dimensional F3 vector `vec` by the row space `wbasis`
// (rows already echelonized with pivot positions `pivots`).
void reduce_vec(std::vector<int>& vec, const std::vector<std::vector<int>>& wbasis,
                const std::vector<int>& pivots) {
  for (size_t r = 0; r < wbasis.size(); ++r) {
    int f = vec[pivots[r]] % 3;
    if (!f) continue;
    for (size_t c = 0; c < vec.size(); ++c)
      vec[c] = ((vec[c] - f * wbasis[r][c]) % 3 + 3) % 3;
  }
}

// Depth-first lifting search. A candidate pair that passed the relation
// check at some level is extended layer by layer. The layer is central and
// elementary in its level group, so translating a candidate by layer
// elements changes no relation check at that level: one check covers the
// whole fiber, and fibers are enumerated modulo the conjugation translates.
struct LiftSearch {
  const GroupChain& a;
  const GroupChain& b;
  MorphismSearchStats* stats;
  long nodes = 0;

  std::optional<std::pair<Element, Element>> dfs(const Element& x,
                                                 const Element& y, int lvl) {
    if (++nodes > kFrontierCap)
      throw std::logic_error("morphism search node budget exceeded");
    if (stats) stats->max_frontier = std::max(stats->max_frontier, nodes);
    if (lvl + 1 >= b.levels()) return std::make_pair(x, y);

    const GroupChain::Level& prev = b.level(lvl);
    const GroupChain::Level& blv = b.level(lvl + 1);
    const PcPresentation& Bq = b.level_group(lvl + 1);
    const PcPresentation& Aq = a.level_group(lvl + 1);
    size_t d = blv.layer.size();

    std::vector<int> pos(b.group().ngens(), -1);
    for (size_t i = 0; i < blv.kept.size(); ++i) pos[blv.kept[i]] = int(i);
    Element bx = Element::identity(Bq.ngens());
    Element by = Element::identity(Bq.ngens());
    for (size_t i = 0; i < prev.kept.size(); ++i) {
      bx.e[pos[prev.kept[i]]] = x.e[i];
      by.e[pos[prev.kept[i]]] = y.e[i];
    }

    if (stats) ++stats->candidates;
    std::vector<Element> imgs;
    if (!images_and_check(Aq, Bq, bx, by, imgs)) return std::nullopt;

    // conjugation translate space for this fiber
    std::vector<std::vector<int>> wbasis;
    std::vector<int> pivots;
    for (const Element& h : blv.centralizer) {
      std::vector<int> row(2 * d, 0);
      std::vector<int> c1, c2;
      Element r1 = blv.layer_sub.sift_coords(Bq, Bq.commutator(bx, h), &c1);
      Element r2 = blv.layer_sub.sift_coords(Bq, Bq.commutator(by, h), &c2);
      if (!r1.is_identity() || !r2.is_identity())
        throw std::logic_error("translate outside layer");
      for (size_t t = 0; t < d; ++t) {
        row[t] = c1[t];
        row[d + t] = c2[t];
      }
      reduce_vec(row, wbasis, pivots);
      int pc = -1;
      for (size_t c = 0; c < row.size(); ++c)
        if (row[c]) {
          pc = int(c);
          break;
        }
      if (pc < 0) continue;
      int inv = row[pc];
      for (auto& v : row) v = (v * inv) % 3;
      wbasis.push_back(row);
      pivots.push_back(pc);
    }

    // fiber representatives modulo the translate space: free coordinates of
    // the complement, enumerated directly
    std::vector<bool> is_pivot(2 * d, false);
    for (int pc : pivots) is_pivot[pc] = true;
    std::vector<int> free_pos;
    for (size_t t = 0; t < 2 * d; ++t)
      if (!is_pivot[t]) free_pos.push_back(int(t));

    std::vector<int> coords(2 * d, 0);
    long count = 1;
    for (size_t t = 0; t < free_pos.size(); ++t) count *= 3;
    for (long it = 0; it < count; ++it) {
      long v = it;
      std::fill(coords.begin(), coords.end(), 0);
      for (int fp : free_pos) {
        coords[fp] = int(v % 3);
        v /= 3;
      }
      Element cx = bx, cy = by;
      for (size_t t = 0; t < d; ++t) {
        for (int k = 0; k < coords[t]; ++k) cx = Bq.mul(cx, blv.layer[t]);
        for (int k = 0; k < coords[d + t]; ++k) cy = Bq.mul(cy, blv.layer[t]);
      }
      auto r = dfs(cx, cy, lvl + 1);
      if (r) return r;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<std::pair<Element, Element>> find_isomorphism(
    const GroupChain& a, const GroupChain& b, const std::optional<GlMatrix>& mat,
    MorphismSearchStats* stats) {
  if (a.cls() != b.cls()) return std::nullopt;
  if (a.group().ngens() != b.group().ngens()) return std::nullopt;
  if (a.layer_logs() != b.layer_logs()) return std::nullopt;

  const PcPresentation& A = a.group();
  const PcPresentation& B = b.group();

  std::vector<GlMatrix> mats = mat ? std::vector<GlMatrix>{*mat} : gl23_all();

  if (a.cls() <= 1) {
    // abelian, necessarily C3 x C3 here: every invertible matrix works
    for (const GlMatrix& m : mats) {
      Element ix = Element::identity(B.ngens());
      Element iy = Element::identity(B.ngens());
      ix.e[0] = static_cast<int8_t>(m[0][0]);
      ix.e[1] = static_cast<int8_t>(m[1][0]);
      iy.e[0] = static_cast<int8_t>(m[0][1]);
      iy.e[1] = static_cast<int8_t>(m[1][1]);
      if (verify_isomorphism(A, B, ix, iy)) return std::make_pair(ix, iy);
    }
    return std::nullopt;
  }

  // the fiber argument needs relation words of x and y to avoid x, y
  for (const PcPresentation* g : {&A, &B}) {
    if (g->power(0).e[0] || g->power(0).e[1] || g->power(1).e[0] ||
        g->power(1).e[1] || g->comm(1, 0).e[0] || g->comm(1, 0).e[1])
      throw std::logic_error("generator relations escape the Frattini subgroup");
  }

  for (const GlMatrix& m : mats) {
    // base candidate at level 0 modulo its layer; the search lifts from a
    // virtual abelian level, entering level 0 through the usual fiber
    const PcPresentation& Bq = b.level_group(0);
    const PcPresentation& Aq = a.level_group(0);
    const GroupChain::Level& blv = b.level(0);
    size_t d = blv.layer.size();
    Element bx = Element::identity(Bq.ngens());
    Element by = Element::identity(Bq.ngens());
    bx.e[0] = static_cast<int8_t>(m[0][0]);
    bx.e[1] = static_cast<int8_t>(m[1][0]);
    by.e[0] = static_cast<int8_t>(m[0][1]);
    by.e[1] = static_cast<int8_t>(m[1][1]);

    if (stats) ++stats->candidates;
    std::vector<Element> imgs;
    if (!images_and_check(Aq, Bq, bx, by, imgs)) continue;

    // translate space: everything centralizes modulo gamma_2
    std::vector<std::vector<int>> wbasis;
    std::vector<int> pivots;
    for (int gi = 0; gi < Bq.ngens(); ++gi) {
      Element h = Bq.gen(gi);
      std::vector<int> row(2 * d, 0);
      std::vector<int> c1, c2;
      Element r1 = blv.layer_sub.sift_coords(Bq, Bq.commutator(bx, h), &c1);
      Element r2 = blv.layer_sub.sift_coords(Bq, Bq.commutator(by, h), &c2);
      if (!r1.is_identity() || !r2.is_identity())
        throw std::logic_error("base translate outside layer");
      for (size_t t = 0; t < d; ++t) {
        row[t] = c1[t];
        row[d + t] = c2[t];
      }
      reduce_vec(row, wbasis, pivots);
      int pc = -1;
      for (size_t c = 0; c < row.size(); ++c)
        if (row[c]) {
          pc = int(c);
          break;
        }
      if (pc < 0) continue;
      int inv = row[pc];
      for (auto& v : row) v = (v * inv) % 3;
      wbasis.push_back(row);
      pivots.push_back(pc);
    }
    std::vector<bool> is_pivot(2 * d, false);
    for (int pc : pivots) is_pivot[pc] = true;
    std::vector<int> free_pos;
    for (size_t t = 0; t < 2 * d; ++t)
      if (!is_pivot[t]) free_pos.push_back(int(t));

    LiftSearch search{a, b, stats};
    std::vector<int> coords(2 * d, 0);
    long count = 1;
    for (size_t t = 0; t < free_pos.size(); ++t) count *= 3;
    std::optional<std::pair<Element, Element>> hit;
    for (long it = 0; it < count && !hit; ++it) {
      long v = it;
      std::fill(coords.begin(), coords.end(), 0);
      for (int fp : free_pos) {
        coords[fp] = int(v % 3);
        v /= 3;
      }
      Element cx = bx, cy = by;
      for (size_t t = 0; t < d; ++t) {
        for (int k = 0; k < coords[t]; ++k) cx = Bq.mul(cx, blv.layer[t]);
        for (int k = 0; k < coords[d + t]; ++k) cy = Bq.mul(cy, blv.layer[t]);
      }
      hit = search.dfs(cx, cy, 0);
    }
    if (hit) {
      if (!verify_isomorphism(A, B, hit->first, hit->second))
        throw std::logic_error("survivor failed final verification");
      return hit;
    }
  }
  return std::nullopt;
}

bool verify_isomorphism(const PcPresentation& a, const PcPresentation& b,
                        const Element& img_x, const Element& img_y) {
  if (a.ngens() != b.ngens()) return false;
  // generator images must span the commutator quotient: rank-2 test on the
  // leading two coordinates
  int det = (img_x.e[0] * img_y.e[1] - img_x.e[1] * img_y.e[0]) % 3;
  if ((det + 3) % 3 == 0) return false;
  std::vector<Element> imgs;
  return images_and_check(a, b, img_x, img_y, imgs);
}

}  // namespace coforest
