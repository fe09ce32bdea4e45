#include "coforest/families.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "coforest/abelian.hpp"
#include "coforest/subgroup.hpp"

namespace coforest {

namespace {

// Integer exponent word over final pc indices; -1 keys are "absent low-weight
// generator" markers whose coefficient must vanish.
using IntWord = std::map<int, long>;

void add(IntWord& w, int idx, long c) {
  if (!c) return;
  w[idx] += c;
  if (!w[idx]) w.erase(idx);
}

void add(IntWord& w, const IntWord& o, long mult) {
  for (auto& [k, v] : o) add(w, k, v * mult);
}

// Reduces an integer word over pairwise commuting generators to exponents in
// {0,1,2}, carrying multiples of 3 into the power words (which are supported
// on strictly later indices).
Element normalize(IntWord w, int n, const std::vector<IntWord>& pw) {
  Element out = Element::identity(n);
  for (int i = 0; i < n; ++i) {
    auto it = w.find(i);
    if (it == w.end()) continue;
    long v = it->second;
    long e = ((v % 3) + 3) % 3;
    long q = (v - e) / 3;
    out.e[i] = static_cast<int8_t>(e);
    if (q) add(w, pw[i], q);
    w.erase(i);
  }
  if (!w.empty()) throw std::logic_error("normalize: unresolved symbol");
  return out;
}

void require_range(int v, int lo, int hi, const char* what) {
  if (v < lo || v > hi) {
    std::ostringstream os;
    os << what << " out of range: " << v;
    throw std::invalid_argument(os.str());
  }
}

PcPresentation finish_build(std::vector<std::string> names,
                            std::vector<Element> power,
                            std::vector<std::vector<Element>> comm,
                            std::vector<GenDef> defs, const char* family) {
  PcPresentation p(std::move(names), std::move(power), std::move(comm),
                   std::move(defs));
  ConsistencyReport rep = p.check_consistency();
  if (!rep.consistent) {
    std::ostringstream os;
    os << family << " presentation inconsistent: " << rep.violation;
    throw std::logic_error(os.str());
  }
  return p;
}

}  // namespace

std::string BlackburnParams::selector() const {
  std::ostringstream os;
  os << "G(" << n << ";" << a << ";" << z << "," << w << ")";
  return os.str();
}

bool BlackburnParams::operator<(const BlackburnParams& o) const {
  if (n != o.n) return n < o.n;
  if (a != o.a) return a < o.a;
  if (z != o.z) return z < o.z;
  return w < o.w;
}

std::string NebelungParams::selector() const {
  std::ostringstream os;
  os << "G(" << m << "," << n() << ";" << rho << ";" << alpha << "," << beta
     << "," << gamma << "," << delta << ")";
  return os.str();
}

bool NebelungParams::operator<(const NebelungParams& o) const {
  if (m != o.m) return m < o.m;
  if (e != o.e) return e < o.e;
  if (rho != o.rho) return rho < o.rho;
  if (alpha != o.alpha) return alpha < o.alpha;
  if (beta != o.beta) return beta < o.beta;
  if (gamma != o.gamma) return gamma < o.gamma;
  return delta < o.delta;
}

bool GroupSelector::operator<(const GroupSelector& o) const {
  if (family != o.family) return family < o.family;
  return family == 0 ? b < o.b : nb < o.nb;
}

NearlyHomocyclic nearly_homocyclic(int n) {
  if (n < 0) throw std::invalid_argument("nearly_homocyclic: negative n");
  NearlyHomocyclic a;
  a.n = n;
  if (n == 0) return a;
  if (n == 1) {
    a.type = {1};
    return a;
  }
  int q = n / 2, r = n % 2;
  a.type = {q + r, q};
  return a;
}

PcPresentation build_blackburn(const BlackburnParams& prm) {
  require_range(prm.n, 2, kMaxGens, "n");
  require_range(prm.a, 0, 1, "a");
  require_range(prm.z, -1, 1, "z");
  require_range(prm.w, -1, 1, "w");
  if (prm.n <= 4 && prm.a != 0)
    throw std::invalid_argument("a must be 0 for n <= 4");
  const int n = prm.n;

  std::vector<std::string> names = {"x", "y"};
  for (int i = 2; i <= n - 1; ++i) names.push_back("s" + std::to_string(i));
  std::vector<GenDef> defs(n);
  // s2 = [y,x], s_i = [s_{i-1}, x]
  if (n >= 3) defs[2] = {GenDef::kCommutator, 1, 0};
  for (int i = 3; i <= n - 1; ++i) defs[i] = {GenDef::kCommutator, i - 1, 0};

  // s_i sits at pc index i (valid for 2 <= i <= n-1); s_n = 1
  auto s = [&](int i) -> IntWord {
    if (i >= n) return {};
    return {{i, 1}};
  };

  // power words, deepest first: s_{n-2}^3 = s_{n-1}^3 = 1,
  // s_i^3 s_{i+1}^3 s_{i+2} = 1 for 2 <= i <= n-3
  std::vector<IntWord> pw(n);
  for (int i = n - 3; i >= 2; --i) {
    IntWord w;
    add(w, s(i + 1), -3);
    add(w, s(i + 2), -1);
    // reduce against deeper power words already known
    Element r = normalize(w, n, pw);
    IntWord red;
    for (int k = 0; k < n; ++k)
      if (r.e[k]) red[k] = r.e[k];
    pw[i] = red;
  }
  {
    // y^3 s2^3 s3 = s_{n-1}^z
    IntWord w;
    add(w, s(n - 1), prm.z);
    add(w, s(3), -1);
    add(w, s(2), -3);
    Element r = normalize(w, n, pw);
    IntWord red;
    for (int k = 0; k < n; ++k)
      if (r.e[k]) red[k] = r.e[k];
    pw[1] = red;
  }
  {
    // x^3 = s_{n-1}^w
    IntWord w;
    add(w, s(n - 1), prm.w);
    Element r = normalize(w, n, pw);
    IntWord red;
    for (int k = 0; k < n; ++k)
      if (r.e[k]) red[k] = r.e[k];
    pw[0] = red;
  }

  std::vector<Element> power(n, Element::identity(n));
  for (int i = 0; i < n; ++i) {
    IntWord w = pw[i];
    power[i] = normalize(w, n, pw);
  }

  std::vector<std::vector<Element>> comm(n,
                                         std::vector<Element>(n, Element::identity(n)));
  auto set_comm = [&](int j, int i, IntWord w) {
    comm[j][i] = normalize(std::move(w), n, pw);
  };
  if (n >= 3) {
    set_comm(1, 0, s(2));                      // [y,x] = s2
    for (int i = 2; i <= n - 1; ++i) {
      IntWord w;
      add(w, s(i + 1), 1);
      set_comm(i, 0, w);                       // [s_i, x] = s_{i+1}
    }
    {
      IntWord w;
      add(w, s(n - 1), -prm.a);
      set_comm(2, 1, w);                       // [s2, y] = s_{n-1}^{-a}
    }
    // [s_i, y] = 1 for i >= 3, [s_i, s_j] = 1: already trivial
  }

  PcPresentation p = finish_build(std::move(names), std::move(power),
                                  std::move(comm), std::move(defs),
                                  "Blackburn");
  int cl = nilpotency_class(p);
  if (cl != (n == 2 ? 1 : n - 1)) {
    std::ostringstream os;
    os << "parameters present a group of class " << cl << ", not coclass 1";
    throw std::invalid_argument(os.str());
  }
  return p;
}

bool nebelung_admissible(const NebelungParams& p) {
  if (p.m < 4 || p.e < 3 || p.e > p.m - 1) return false;
  for (int v : {p.rho, p.alpha, p.beta, p.gamma, p.delta})
    if (v < -1 || v > 1) return false;
  if (p.m == 4) {
    // sigma_{m-2} = sigma_2 is not a generator; its exponents rho*beta and
    // rho*delta must vanish
    if (p.rho != 0 && (p.beta != 0 || p.delta != 0)) return false;
  }
  return true;
}

PcPresentation build_nebelung(const NebelungParams& prm) {
  if (prm.m < 4) throw std::invalid_argument("m must be >= 4");
  if (prm.e < 3 || prm.e > prm.m - 1)
    throw std::invalid_argument("e must satisfy 3 <= e <= m-1");
  for (int v : {prm.rho, prm.alpha, prm.beta, prm.gamma, prm.delta})
    require_range(v, -1, 1, "parameter");
  if (!nebelung_admissible(prm))
    throw std::invalid_argument(
        "inadmissible parameters: relation references the absent sigma_2");

  const int m = prm.m, e = prm.e;
  const int n = m + e - 2;
  const long rho = prm.rho, alpha = prm.alpha, beta = prm.beta,
             gamma = prm.gamma, delta = prm.delta;

  // pc order: x(0), y(1), s2(2), tau_3..tau_e (3..e), sigma_3..sigma_{m-1}
  auto tau_idx = [&](int i) { return 3 + (i - 3); };
  auto sig_idx = [&](int i) { return 3 + (e - 2) + (i - 3); };

  std::vector<std::string> names = {"x", "y", "s2"};
  for (int i = 3; i <= e; ++i) names.push_back("tau" + std::to_string(i));
  for (int i = 3; i <= m - 1; ++i) names.push_back("sig" + std::to_string(i));

  std::vector<GenDef> defs(n);
  defs[2] = {GenDef::kCommutator, 1, 0};             // s2 = [y,x]
  defs[tau_idx(3)] = {GenDef::kPower, 0, -1};        // tau3 = x^3
  for (int i = 4; i <= e; ++i)
    defs[tau_idx(i)] = {GenDef::kCommutator, tau_idx(i - 1), 1};
  defs[sig_idx(3)] = {GenDef::kPower, 1, -1};        // sig3 = y^3
  for (int i = 4; i <= m - 1; ++i)
    defs[sig_idx(i)] = {GenDef::kCommutator, sig_idx(i - 1), 0};

  // symbol words; sigma_m = tau_{e+2} = 1, tau_{e+1} = sigma_{m-1}^{-rho}
  auto sig = [&](int i) -> IntWord {
    if (i >= m) return {};
    if (i >= 3) return {{sig_idx(i), 1}};
    throw std::logic_error("sigma_2 referenced with nonzero coefficient");
  };
  auto sigc = [&](int i, long c) -> IntWord {
    IntWord w;
    if (!c) return w;
    if (i >= m) return w;
    if (i < 3) throw std::logic_error("sigma_2 referenced");
    add(w, sig_idx(i), c);
    return w;
  };
  auto tauc = [&](int i, long c) -> IntWord {
    IntWord w;
    if (!c) return w;
    if (i >= e + 2) return w;
    if (i == e + 1) {
      add(w, sigc(m - 1, -rho), c);
      return w;
    }
    if (i < 3) throw std::logic_error("tau_2 referenced");
    add(w, tau_idx(i), c);
    return w;
  };

  std::vector<IntWord> pw(n);
  auto reduce_into = [&](IntWord w) {
    Element r = normalize(std::move(w), n, pw);
    IntWord red;
    for (int k = 0; k < n; ++k)
      if (r.e[k]) red[k] = r.e[k];
    return red;
  };

  // sigma powers, deepest first: sigma_{m-1}^3 = sigma_{m-2}^3 = 1,
  // sigma_i^3 sigma_{i+1}^3 sigma_{i+2} = 1 for 3 <= i <= m-3
  for (int i = m - 3; i >= 3; --i) {
    IntWord w;
    add(w, sigc(i + 1, -3), 1);
    add(w, sigc(i + 2, -1), 1);
    pw[sig_idx(i)] = reduce_into(std::move(w));
  }
  // tau powers: tau_e^3 = 1, tau_i^3 tau_{i+1}^3 tau_{i+2} = 1 for
  // 3 <= i <= e-1 (tau_{e+1} substituting)
  for (int i = e - 1; i >= 3; --i) {
    IntWord w;
    add(w, tauc(i + 1, -3), 1);
    add(w, tauc(i + 2, -1), 1);
    pw[tau_idx(i)] = reduce_into(std::move(w));
  }
  {
    // s2^3 = sigma_4 sigma_{m-1}^{-rho beta} tau_4^{-1}
    IntWord w;
    add(w, sigc(4, 1), 1);
    add(w, sigc(m - 1, -rho * beta), 1);
    add(w, tauc(4, -1), 1);
    pw[2] = reduce_into(std::move(w));
  }
  pw[1] = {{sig_idx(3), 1}};  // y^3 = sigma_3
  pw[0] = {{tau_idx(3), 1}};  // x^3 = tau_3

  std::vector<Element> power(n, Element::identity(n));
  for (int i = 0; i < n; ++i) {
    IntWord w = pw[i];
    power[i] = normalize(std::move(w), n, pw);
  }

  std::vector<std::vector<Element>> comm(n,
                                         std::vector<Element>(n, Element::identity(n)));
  auto set_comm = [&](int j, int i, IntWord w) {
    comm[j][i] = normalize(std::move(w), n, pw);
  };

  set_comm(1, 0, IntWord{{2, 1}});  // [y,x] = s2
  {
    // [s2,x] = s3 = sigma_3^-1 sigma_4^-1 sigma_{m-2}^{rho beta}
    //               sigma_{m-1}^gamma tau_e^delta
    IntWord w;
    add(w, sigc(3, -1), 1);
    add(w, sigc(4, -1), 1);
    add(w, sigc(m - 2, rho * beta), 1);
    add(w, sigc(m - 1, gamma), 1);
    add(w, tauc(e, delta), 1);
    set_comm(2, 0, std::move(w));
  }
  {
    // [s2,y] = t3 = tau_3 tau_4 sigma_{m-2}^{-rho delta} sigma_{m-1}^{-alpha}
    //               tau_e^{-beta}
    IntWord w;
    add(w, tauc(3, 1), 1);
    add(w, tauc(4, 1), 1);
    add(w, sigc(m - 2, -rho * delta), 1);
    add(w, sigc(m - 1, -alpha), 1);
    add(w, tauc(e, -beta), 1);
    set_comm(2, 1, std::move(w));
  }
  for (int i = 3; i <= m - 1; ++i)
    set_comm(sig_idx(i), 0, sigc(i + 1, 1));  // [sigma_i, x] = sigma_{i+1}
  for (int i = 3; i <= e; ++i)
    set_comm(tau_idx(i), 1, tauc(i + 1, 1));  // [tau_i, y] = tau_{i+1}
  // [sigma_i, y] = [tau_i, x] = 1 and the commutator subgroup is abelian:
  // all remaining pairs stay trivial

  PcPresentation p = finish_build(std::move(names), std::move(power),
                                  std::move(comm), std::move(defs), "Nebelung");
  // family membership: the classified groups have commutator quotient
  // exactly (3,3), class m-1 and coclass e-1; degenerate parameter tuples
  // present consistent groups outside the family and are rejected
  AbelianType ab = abelian_invariants(p, InducedSubgroup::whole(p));
  if (!(ab == AbelianType{{1, 1}}))
    throw std::invalid_argument(
        "parameters present a group with commutator quotient " + ab.str() +
        ", not (3,3)");
  int cl = nilpotency_class(p);
  if (cl != prm.m - 1) {
    std::ostringstream os;
    os << "parameters present a group of class " << cl << ", not " << prm.m - 1;
    throw std::invalid_argument(os.str());
  }
  return p;
}

PcPresentation build(const GroupSelector& s) {
  return s.family == 0 ? build_blackburn(s.b) : build_nebelung(s.nb);
}

std::vector<GroupSelector> family_grid(int coclass, int min_lo, int max_lo) {
  std::vector<GroupSelector> out;
  if (coclass < 1) throw std::invalid_argument("coclass must be >= 1");
  if (coclass == 1) {
    for (int n = std::max(2, min_lo); n <= max_lo; ++n) {
      if (n == 2) {
        out.push_back(GroupSelector::blackburn({2, 0, 0, 0}));
        continue;
      }
      int amax = n <= 4 ? 0 : 1;
      for (int a = 0; a <= amax; ++a)
        for (int z = -1; z <= 1; ++z)
          for (int w = -1; w <= 1; ++w)
            out.push_back(GroupSelector::blackburn({n, a, z, w}));
    }
    return out;
  }
  int e = coclass + 1;
  for (int lo = std::max(2 * coclass + 1, min_lo); lo <= max_lo; ++lo) {
    int m = lo - e + 2;
    if (m < 4 || e > m - 1) continue;
    for (int rho = -1; rho <= 1; ++rho)
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
          for (int g = -1; g <= 1; ++g)
            for (int d = -1; d <= 1; ++d) {
              NebelungParams p{m, e, rho, a, b, g, d};
              if (!nebelung_admissible(p)) continue;
              out.push_back(GroupSelector::nebelung(p));
            }
  }
  return out;
}

std::vector<BuiltGroup> enumerate_family(int coclass, int min_lo, int max_lo) {
  std::vector<BuiltGroup> out;
  for (const auto& sel : family_grid(coclass, min_lo, max_lo)) {
    try {
      out.push_back(BuiltGroup{sel, build(sel)});
    } catch (const std::invalid_argument&) {
      // tuple outside the classified family (wrong commutator quotient)
    }
  }
  return out;
}

std::optional<GroupSelector> parse_selector(const std::string& text) {
  // G(n;a;z,w) or G(m,n;rho;a,b,g,d)
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 4 || s[0] != 'G' || s[1] != '(' || s.back() != ')')
    return std::nullopt;
  s = s.substr(2, s.size() - 3);
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3) return std::nullopt;
  auto ints = [](const std::string& t) {
    std::vector<int> v;
    std::string cur;
    for (char c : t) {
      if (c == ',') {
        v.push_back(std::stoi(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) v.push_back(std::stoi(cur));
    return v;
  };
  try {
    auto head = ints(parts[0]);
    auto mid = ints(parts[1]);
    auto tail = ints(parts[2]);
    if (mid.size() != 1) return std::nullopt;
    if (head.size() == 1 && tail.size() == 2) {
      BlackburnParams p{head[0], mid[0], tail[0], tail[1]};
      return GroupSelector::blackburn(p);
    }
    if (head.size() == 2 && tail.size() == 4) {
      int m = head[0], n = head[1];
      NebelungParams p{m, n - m + 2, mid[0], tail[0], tail[1], tail[2], tail[3]};
      return GroupSelector::nebelung(p);
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace coforest
