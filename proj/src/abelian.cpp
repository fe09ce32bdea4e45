#include "coforest/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace coforest {

namespace {

const char* kSuperscripts[] = {"⁰", "¹", "²", "³",
                               "⁴", "⁵", "⁶", "⁷",
                               "⁸", "⁹"};

int superscript_value(const std::string& s, size_t& i) {
  for (int d = 0; d <= 9; ++d) {
    size_t len = std::string(kSuperscripts[d]).size();
    if (s.compare(i, len, kSuperscripts[d]) == 0) {
      i += len;
      return d;
    }
  }
  return -1;
}

}  // namespace

std::string AbelianType::str() const {
  if (logs.empty()) return "0";
  std::string out;
  size_t i = 0;
  while (i < logs.size()) {
    size_t j = i;
    while (j < logs.size() && logs[j] == logs[i]) ++j;
    size_t mult = j - i;
    out += std::to_string(logs[i]);
    if (mult > 1) {
      if (mult > 9) throw std::logic_error("type multiplicity too large");
      out += kSuperscripts[mult];
    }
    i = j;
  }
  return out;
}

AbelianType AbelianType::parse(const std::string& text) {
  AbelianType t;
  if (text == "0" || text.empty()) return t;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c >= '1' && c <= '9') {
      int base = c - '0';
      ++i;
      int mult = 1;
      if (i < text.size()) {
        int sv = superscript_value(text, i);
        if (sv > 0) mult = sv;
        else if (text[i] == '^') {
          ++i;
          mult = 0;
          while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
            mult = mult * 10 + (text[i++] - '0');
        }
      }
      for (int k = 0; k < mult; ++k) t.logs.push_back(base);
    } else {
      throw std::invalid_argument("bad abelian type string: " + text);
    }
  }
  for (size_t k = 1; k < t.logs.size(); ++k)
    if (t.logs[k] > t.logs[k - 1])
      throw std::invalid_argument("abelian type not weakly decreasing: " + text);
  return t;
}

AbelianType AbelianType::of_nearly_homocyclic(int n) {
  AbelianType t;
  if (n <= 0) return t;
  if (n == 1) {
    t.logs = {1};
    return t;
  }
  t.logs = {n / 2 + n % 2, n / 2};
  return t;
}

AbelianType AbelianType::nearly_homocyclic_product(int u, int v) {
  AbelianType a = of_nearly_homocyclic(u);
  AbelianType b = of_nearly_homocyclic(v);
  a.logs.insert(a.logs.end(), b.logs.begin(), b.logs.end());
  std::sort(a.logs.begin(), a.logs.end(), std::greater<int>());
  return a;
}

AbelianType abelian_type_from_relations(
    const std::vector<std::vector<long>>& rows, int ncols) {
  // Smith normal form over Z with smallest-pivot selection.
  size_t nr = rows.size();
  std::vector<std::vector<long>> m(rows);
  for (auto& r : m)
    if (static_cast<int>(r.size()) != ncols)
      throw std::invalid_argument("relation row length mismatch");

  int rank_pos = 0;
  std::vector<long> diag;
  size_t top = 0;
  int left = 0;
  while (top < nr && left < ncols) {
    // find smallest nonzero |entry| in the remaining block
    size_t pi = nr;
    int pj = -1;
    long best = 0;
    for (size_t i = top; i < nr; ++i)
      for (int j = left; j < ncols; ++j) {
        long v = std::labs(m[i][j]);
        if (v && (best == 0 || v < best)) {
          best = v;
          pi = i;
          pj = j;
        }
      }
    if (pi == nr) break;
    std::swap(m[top], m[pi]);
    for (size_t i = 0; i < nr; ++i) std::swap(m[i][left], m[i][pj]);
    bool dirty = false;
    for (size_t i = top + 1; i < nr; ++i) {
      long q = m[i][left] / m[top][left];
      if (q)
        for (int j = left; j < ncols; ++j) m[i][j] -= q * m[top][j];
      if (m[i][left]) dirty = true;
    }
    for (int j = left + 1; j < ncols; ++j) {
      long q = m[top][j] / m[top][left];
      if (q)
        for (size_t i = top; i < nr; ++i) m[i][j] -= q * m[i][left];
      if (m[top][j]) dirty = true;
    }
    if (dirty) continue;  // re-pick pivot until row/col are clean
    diag.push_back(std::labs(m[top][left]));
    ++top;
    ++left;
    ++rank_pos;
  }
  (void)rank_pos;

  // remaining zero columns correspond to free factors; a finite 3-group
  // presentation must not have any
  if (static_cast<int>(diag.size()) != ncols)
    throw std::logic_error("relation matrix does not present a finite group");

  AbelianType t;
  for (long d : diag) {
    if (d == 0) throw std::logic_error("zero invariant factor");
    int lg = 0;
    while (d % 3 == 0) {
      d /= 3;
      ++lg;
    }
    if (d != 1) throw std::logic_error("invariant factor not a 3-power");
    if (lg > 0) t.logs.push_back(lg);
  }
  std::sort(t.logs.begin(), t.logs.end(), std::greater<int>());
  return t;
}

AbelianType abelian_invariants(const PcPresentation& p,
                               const InducedSubgroup& u) {
  const auto& gs = u.gens();
  int k = static_cast<int>(gs.size());
  if (k == 0) return AbelianType{};
  std::vector<std::vector<long>> rows;
  auto coords_of = [&](const Element& w) {
    std::vector<int> c;
    Element r = u.sift_coords(p, w, &c);
    if (!r.is_identity())
      throw std::logic_error("element escapes subgroup in abelian_invariants");
    return c;
  };
  for (int a = 0; a < k; ++a) {
    // u_a^3 relation
    std::vector<long> row(k, 0);
    row[a] = 3;
    auto c = coords_of(p.pow(gs[a], 3));
    for (int t = 0; t < k; ++t) row[t] -= c[t];
    rows.push_back(std::move(row));
    for (int b = a + 1; b < k; ++b) {
      // commutator relation (dies in the abelianization)
      auto cc = coords_of(p.commutator(gs[b], gs[a]));
      std::vector<long> r2(k, 0);
      for (int t = 0; t < k; ++t) r2[t] = cc[t];
      rows.push_back(std::move(r2));
    }
  }
  return abelian_type_from_relations(rows, k);
}

}  // namespace coforest
