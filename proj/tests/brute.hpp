#pragma once

// Brute-force oracles over the full element set. Only usable for small
// groups; every helper guards the order. These deliberately avoid the
// library's subgroup machinery so the two routes stay independent.

#include <set>
#include <stdexcept>
#include <vector>

#include "coforest/element.hpp"
#include "coforest/pc_presentation.hpp"

namespace coforest::brute {

inline std::vector<Element> all_elements(const PcPresentation& p,
                                         int max_log = 7) {
  if (p.ngens() > max_log) throw std::logic_error("group too large for brute");
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

inline std::set<Element> closure(const PcPresentation& p,
                                 const std::vector<Element>& seeds) {
  std::set<Element> members;
  members.insert(Element::identity(p.ngens()));
  std::vector<Element> queue(seeds.begin(), seeds.end());
  while (!queue.empty()) {
    Element w = queue.back();
    queue.pop_back();
    if (members.count(w)) continue;
    std::vector<Element> snapshot(members.begin(), members.end());
    members.insert(w);
    queue.push_back(p.inv(w));
    for (const Element& m : snapshot) {
      queue.push_back(p.mul(m, w));
      queue.push_back(p.mul(w, m));
    }
  }
  return members;
}

inline std::set<Element> normal_closure(const PcPresentation& p,
                                        const std::vector<Element>& seeds) {
  std::vector<Element> conj_seeds;
  std::set<Element> cur = closure(p, seeds);
  for (;;) {
    std::vector<Element> next_seeds(cur.begin(), cur.end());
    bool grew = false;
    for (const Element& m : cur)
      for (int i = 0; i < p.ngens(); ++i) {
        Element c = p.conj(m, p.gen(i));
        if (!cur.count(c)) {
          next_seeds.push_back(c);
          grew = true;
        }
      }
    if (!grew) return cur;
    cur = closure(p, next_seeds);
  }
}

inline std::set<Element> commutator_set(const PcPresentation& p,
                                        const std::set<Element>& a,
                                        const std::set<Element>& b) {
  std::vector<Element> seeds;
  for (const Element& u : a)
    for (const Element& v : b) seeds.push_back(p.commutator(u, v));
  return normal_closure(p, seeds);
}

inline std::vector<std::set<Element>> lower_central(const PcPresentation& p) {
  auto everything_v = all_elements(p);
  std::set<Element> everything(everything_v.begin(), everything_v.end());
  std::vector<std::set<Element>> series{everything};
  while (series.back().size() > 1) {
    series.push_back(commutator_set(p, series.back(), everything));
    if (series.back().size() >= series[series.size() - 2].size())
      throw std::logic_error("brute lcs stuck");
  }
  return series;
}

inline std::set<Element> centre_set(const PcPresentation& p) {
  std::set<Element> z;
  for (const Element& w : all_elements(p)) {
    bool central = true;
    for (int i = 0; i < p.ngens() && central; ++i)
      if (!p.commutator(w, p.gen(i)).is_identity()) central = false;
    if (central) z.insert(w);
  }
  return z;
}

}  // namespace coforest::brute
