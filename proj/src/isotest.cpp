#include "coforest/isotest.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace coforest {

namespace {

long order_of_log(int lo) {
  long v = 1;
  for (int i = 0; i < lo; ++i) v *= 3;
  return v;
}

std::vector<Element> all_elements(const PcPresentation& p) {
  std::vector<Element> out;
  Element w = Element::identity(p.ngens());
  for (;;) {
    out.push_back(w);
    int i = p.ngens() - 1;
    while (i >= 0 && w.e[i] == 2) w.e[i--] = 0;
    if (i < 0) break;
    ++w.e[i];
  }
  return out;
}

}  // namespace

bool Fingerprint::operator<(const Fingerprint& o) const {
  auto key = [](const Fingerprint& f) {
    return std::tie(f.lo, f.cl, f.cc, f.dl, f.defect, f.zeta.logs,
                    f.tau2.logs, f.kappa_class.kappa, f.tau_sorted,
                    f.has_order_histogram, f.order_histogram, f.has_conjugacy,
                    f.conjugacy_sizes);
  };
  return key(*this) < key(o);
}

Fingerprint fingerprint_from(const GroupInvariants& inv,
                             const PcPresentation& p) {
  Fingerprint f;
  f.lo = inv.lo;
  f.cl = inv.cl;
  f.cc = inv.cc;
  f.dl = inv.dl;
  f.defect = inv.defect;
  f.zeta = inv.zeta;
  f.tau2 = inv.tau2;
  f.kappa_class = inv.kappa_class;
  f.tau_sorted.assign(inv.tau.begin(), inv.tau.end());
  std::sort(f.tau_sorted.begin(), f.tau_sorted.end());

  if (order_of_log(inv.lo) <= kFingerprintEnumBound) {
    auto elems = all_elements(p);
    std::map<long, long> hist;
    for (const Element& w : elems) ++hist[p.element_order(w)];
    f.order_histogram.assign(hist.begin(), hist.end());
    f.has_order_histogram = true;

    // conjugacy class sizes by orbit sweep
    std::set<Element> seen;
    std::vector<long> sizes;
    for (const Element& w : elems) {
      if (seen.count(w)) continue;
      std::vector<Element> orbit{w};
      std::set<Element> orb{w};
      for (size_t i = 0; i < orbit.size(); ++i) {
        for (int g = 0; g < p.ngens(); ++g) {
          Element c = p.conj(orbit[i], p.gen(g));
          if (orb.insert(c).second) orbit.push_back(c);
        }
      }
      for (const Element& c : orbit) seen.insert(c);
      sizes.push_back(static_cast<long>(orbit.size()));
    }
    std::sort(sizes.begin(), sizes.end());
    f.conjugacy_sizes = std::move(sizes);
    f.has_conjugacy = true;
  }
  return f;
}

Fingerprint fingerprint(const PcPresentation& p) {
  InvariantOptions opts;
  opts.gi_bound = 0;  // the flags are not part of the fingerprint
  opts.v4_bound = 0;
  return fingerprint_from(compute_invariants(p, opts), p);
}

IsoResult isomorphic(const PcPresentation& a, const PcPresentation& b,
                     long bound) {
  IsoResult res;
  if (a.ngens() != b.ngens()) {
    res.verdict = IsoVerdict::kNo;
    return res;
  }
  Fingerprint fa = fingerprint(a), fb = fingerprint(b);
  if (!(fa == fb)) {
    res.verdict = IsoVerdict::kNo;
    return res;
  }
  if (order_of_log(a.ngens()) > bound) {
    res.verdict = IsoVerdict::kUndetermined;
    return res;
  }
  GroupChain ca(a), cb(b);
  auto found = find_isomorphism(ca, cb);
  if (found) {
    if (!verify_isomorphism(a, b, found->first, found->second))
      throw std::logic_error("isomorphism certificate failed re-check");
    res.verdict = IsoVerdict::kYes;
    res.map = found;
  } else {
    res.verdict = IsoVerdict::kNo;
  }
  return res;
}

ClassifiedGroup classify(const GroupSelector& sel, const PcPresentation& p,
                         const InvariantOptions& opts) {
  ClassifiedGroup g;
  g.sel = sel;
  g.pres = std::make_shared<PcPresentation>(p);
  g.inv = compute_invariants(p, opts);
  g.fp = fingerprint_from(g.inv, p);
  return g;
}

DedupResult dedup(std::vector<ClassifiedGroup>& pool, long bound, int jobs) {
  (void)jobs;
  DedupResult out;
  out.class_of.assign(pool.size(), -1);

  // sort indices by (fingerprint, selector) for deterministic buckets
  std::vector<size_t> idx(pool.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    if (pool[x].fp < pool[y].fp) return true;
    if (pool[y].fp < pool[x].fp) return false;
    return pool[x].sel < pool[y].sel;
  });

  std::vector<size_t> reps;
  size_t bucket_start = 0;
  while (bucket_start < idx.size()) {
    size_t bucket_end = bucket_start;
    while (bucket_end < idx.size() &&
           pool[idx[bucket_end]].fp == pool[idx[bucket_start]].fp)
      ++bucket_end;

    std::vector<size_t> bucket_reps;
    for (size_t t = bucket_start; t < bucket_end; ++t) {
      size_t i = idx[t];
      bool placed = false;
      for (size_t r : bucket_reps) {
        if (order_of_log(pool[i].inv.lo) > bound) {
          // fingerprint-trusted merge, flagged as uncertified
          out.class_of[i] = out.class_of[r];
          out.certified = false;
          placed = true;
          break;
        }
        auto found = find_isomorphism(pool[i].ensure_chain(),
                                      pool[r].ensure_chain());
        if (found) {
          if (!verify_isomorphism(*pool[i].pres, *pool[r].pres, found->first,
                                  found->second))
            throw std::logic_error("dedup certificate failed re-check");
          out.class_of[i] = out.class_of[r];
          placed = true;
          break;
        }
      }
      if (!placed) {
        out.class_of[i] = static_cast<int>(reps.size());
        reps.push_back(i);
        bucket_reps.push_back(i);
      }
    }
    bucket_start = bucket_end;
  }
  out.reps = std::move(reps);
  return out;
}

}  // namespace coforest
