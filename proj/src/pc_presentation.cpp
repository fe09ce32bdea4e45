#include "coforest/pc_presentation.hpp"

#include <sstream>

namespace coforest {

namespace {

void check_support(const Element& w, int min_excl, const char* what, int idx) {
  for (int k = 0; k <= min_excl && k < w.n; ++k) {
    if (w.e[k]) {
      std::ostringstream os;
      os << what << " relation of generator " << idx
         << " involves generator " << k << " (must involve only later ones)";
      throw std::invalid_argument(os.str());
    }
  }
}

}  // namespace

PcPresentation::PcPresentation(std::vector<std::string> names,
                               std::vector<Element> power,
                               std::vector<std::vector<Element>> comm,
                               std::vector<GenDef> defs)
    : n_(static_cast<int>(names.size())),
      names_(std::move(names)),
      power_(std::move(power)),
      comm_(std::move(comm)),
      defs_(std::move(defs)) {
  if (n_ < 1 || n_ > kMaxGens) throw std::invalid_argument("bad ngens");
  if (static_cast<int>(power_.size()) != n_ ||
      static_cast<int>(comm_.size()) != n_ ||
      static_cast<int>(defs_.size()) != n_)
    throw std::invalid_argument("relation table sizes do not match ngens");
  for (int i = 0; i < n_; ++i) {
    if (power_[i].n != n_) throw std::invalid_argument("power word length");
    validate(power_[i]);
    check_support(power_[i], i, "power", i);
    if (static_cast<int>(comm_[i].size()) != n_)
      throw std::invalid_argument("comm table row length");
    for (int j = 0; j < i; ++j) {
      if (comm_[i][j].n != n_) throw std::invalid_argument("comm word length");
      validate(comm_[i][j]);
      check_support(comm_[i][j], i, "commutator", i);
    }
  }
  comm_triv_.assign(n_, std::vector<bool>(n_, true));
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      comm_triv_[j][i] = comm_[j][i].is_identity();

  // inverses of the generators, deepest first
  geninv_.assign(n_, Element::identity(n_));
  for (int i = n_ - 1; i >= 0; --i) {
    // g_i^-1 = g_i^2 * (g_i^3)^-1; the power word lives strictly deeper,
    // so its generator inverses are already available.
    Element r = Element::identity(n_);
    r.e[i] = 2;
    if (!power_[i].is_identity()) {
      Element pinv = Element::identity(n_);
      for (int j = n_ - 1; j > i; --j)
        for (int t = 0; t < power_[i].e[j]; ++t) pinv = mul(pinv, geninv_[j]);
      r = mul(r, pinv);
    }
    geninv_[i] = r;
  }
}

void PcPresentation::validate(const Element& w) const {
  if (w.n != n_) throw std::invalid_argument("element length mismatch");
  for (int i = 0; i < n_; ++i)
    if (w.e[i] < 0 || w.e[i] > 2)
      throw std::invalid_argument("exponent out of range");
}

Element PcPresentation::gen(int i) const {
  Element w = Element::identity(n_);
  w.e[i] = 1;
  return w;
}

Element PcPresentation::word(
    const std::vector<std::pair<int, int>>& sylls) const {
  Element w = Element::identity(n_);
  int prev = -1;
  for (auto& [i, ex] : sylls) {
    if (i <= prev) throw std::invalid_argument("word indices not increasing");
    prev = i;
    w.e[i] = static_cast<int8_t>(((ex % 3) + 3) % 3);
  }
  return w;
}

Element PcPresentation::mul_word(Element u, const Element& w) const {
  for (int i = 0; i < n_; ++i)
    for (int t = 0; t < w.e[i]; ++t) u = mul_gen(u, i);
  return u;
}

Element PcPresentation::mul(const Element& a, const Element& b) const {
  return mul_word(a, b);
}

// t^(g_i) for a word t supported strictly above i.
Element PcPresentation::conj_tail_by_gen(const Element& t, int i) const {
  Element res = Element::identity(n_);
  for (int j = i + 1; j < n_; ++j) {
    for (int k = 0; k < t.e[j]; ++k) {
      res = mul_gen(res, j);
      if (!comm_triv_[j][i]) res = mul_word(res, comm_[j][i]);
    }
  }
  return res;
}

Element PcPresentation::mul_gen(const Element& u, int i) const {
  // Does u have support above i?
  int first_tail = -1;
  for (int j = i + 1; j < n_; ++j)
    if (u.e[j]) {
      first_tail = j;
      break;
    }

  if (first_tail < 0) {
    Element r = u;
    if (++r.e[i] == 3) {
      r.e[i] = 0;
      if (!power_[i].is_identity()) r = mul_word(r, power_[i]);
    }
    return r;
  }

  bool tail_commutes = true;
  for (int j = first_tail; j < n_; ++j)
    if (u.e[j] && !comm_triv_[j][i]) {
      tail_commutes = false;
      break;
    }

  Element head = u;
  for (int j = i + 1; j < n_; ++j) head.e[j] = 0;
  Element tail = u;
  for (int j = 0; j <= i; ++j) tail.e[j] = 0;

  Element r = mul_gen(head, i);
  if (tail_commutes) return mul_word(r, tail);
  return mul_word(r, conj_tail_by_gen(tail, i));
}

Element PcPresentation::inv(const Element& a) const {
  Element res = Element::identity(n_);
  for (int i = n_ - 1; i >= 0; --i)
    for (int t = 0; t < a.e[i]; ++t) res = mul(res, geninv_[i]);
  return res;
}

Element PcPresentation::conj(const Element& a, const Element& b) const {
  return mul(mul(inv(b), a), b);
}

Element PcPresentation::commutator(const Element& a, const Element& b) const {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

Element PcPresentation::pow(Element a, long k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Element r = Element::identity(n_);
  while (k) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

long PcPresentation::element_order(const Element& a) const {
  long ord = 1;
  Element w = a;
  while (!w.is_identity()) {
    w = mul(mul(w, w), w);  // w^3
    ord *= 3;
    if (ord > (1L << 62)) throw std::logic_error("order runaway");
  }
  return ord;
}

ConsistencyReport PcPresentation::check_consistency() const {
  ConsistencyReport rep;
  auto fail = [&](const std::string& msg) {
    rep.consistent = false;
    if (rep.violation.empty()) rep.violation = msg;
  };

  // triple overlaps g_k (g_j g_i) = (g_k g_j) g_i, k > j > i
  for (int k = 0; k < n_ && rep.consistent; ++k)
    for (int j = 0; j < k && rep.consistent; ++j)
      for (int i = 0; i < j && rep.consistent; ++i) {
        Element lhs = mul_gen(mul_gen(gen(k), j), i);
        Element rhs = mul(gen(k), mul_gen(gen(j), i));
        if (lhs != rhs) {
          std::ostringstream os;
          os << "associativity overlap (" << k << "," << j << "," << i << ")";
          fail(os.str());
        }
      }

  // power overlaps
  for (int j = 0; j < n_ && rep.consistent; ++j)
    for (int i = 0; i < j && rep.consistent; ++i) {
      {
        Element lhs = mul_gen(power_[j], i);  // (g_j^3) g_i
        Element sq = Element::identity(n_);
        sq.e[j] = 2;
        Element rhs = mul(sq, mul_gen(gen(j), i));  // g_j^2 (g_j g_i)
        if (lhs != rhs) {
          std::ostringstream os;
          os << "power overlap (" << j << "^3," << i << ")";
          fail(os.str());
        }
      }
      if (!rep.consistent) break;
      {
        Element lhs = mul(gen(j), power_[i]);  // g_j (g_i^3)
        Element sq = Element::identity(n_);
        sq.e[i] = 2;
        Element rhs = mul(mul_gen(gen(j), i), sq);  // (g_j g_i) g_i^2
        if (lhs != rhs) {
          std::ostringstream os;
          os << "power overlap (" << j << "," << i << "^3)";
          fail(os.str());
        }
      }
    }

  for (int i = 0; i < n_ && rep.consistent; ++i) {
    Element lhs = mul(gen(i), power_[i]);
    Element rhs = mul_gen(power_[i], i);
    if (lhs != rhs) {
      std::ostringstream os;
      os << "power overlap (" << i << "," << i << "^3)";
      fail(os.str());
    }
  }
  return rep;
}

std::string PcPresentation::serialize() const {
  std::ostringstream os;
  os << "pcgroup " << n_ << "\n";
  for (int i = 0; i < n_; ++i) os << "name " << i << " " << names_[i] << "\n";
  auto emit = [&](const Element& w) {
    for (int k = 0; k < n_; ++k)
      if (w.e[k]) os << " " << k << ":" << int(w.e[k]);
    os << "\n";
  };
  for (int i = 0; i < n_; ++i)
    if (!power_[i].is_identity()) {
      os << "pow " << i;
      emit(power_[i]);
    }
  for (int j = 0; j < n_; ++j)
    for (int i = 0; i < j; ++i)
      if (!comm_triv_[j][i]) {
        os << "comm " << j << " " << i;
        emit(comm_[j][i]);
      }
  for (int i = 0; i < n_; ++i) {
    const GenDef& d = defs_[i];
    if (d.kind == GenDef::kCommutator)
      os << "def " << i << " comm " << d.a << " " << d.b << "\n";
    else if (d.kind == GenDef::kPower)
      os << "def " << i << " pow " << d.a << "\n";
  }
  os << "end\n";
  return os.str();
}

PcPresentation PcPresentation::parse(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  if (!(is >> tok) || tok != "pcgroup")
    throw std::invalid_argument("expected 'pcgroup'");
  int n;
  if (!(is >> n) || n < 1 || n > kMaxGens)
    throw std::invalid_argument("bad generator count");
  std::vector<std::string> names(n);
  std::vector<Element> power(n, Element::identity(n));
  std::vector<std::vector<Element>> comm(
      n, std::vector<Element>(n, Element::identity(n)));
  std::vector<GenDef> defs(n);
  defs[0].kind = GenDef::kGenerator;
  if (n > 1) defs[1].kind = GenDef::kGenerator;

  auto read_word = [&](std::istream& line) {
    Element w = Element::identity(n);
    std::string p;
    while (line >> p) {
      auto c = p.find(':');
      if (c == std::string::npos) throw std::invalid_argument("bad syllable");
      int idx = std::stoi(p.substr(0, c));
      int ex = std::stoi(p.substr(c + 1));
      if (idx < 0 || idx >= n || ex < 0 || ex > 2)
        throw std::invalid_argument("bad syllable range");
      w.e[idx] = static_cast<int8_t>(ex);
    }
    return w;
  };

  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> tok;
    if (tok == "end") break;
    if (tok == "name") {
      int i;
      ls >> i;
      if (i < 0 || i >= n) throw std::invalid_argument("bad name index");
      ls >> names[i];
    } else if (tok == "pow") {
      int i;
      ls >> i;
      if (i < 0 || i >= n) throw std::invalid_argument("bad pow index");
      power[i] = read_word(ls);
    } else if (tok == "comm") {
      int j, i;
      ls >> j >> i;
      if (j <= i || j < 0 || j >= n || i < 0)
        throw std::invalid_argument("bad comm indices");
      comm[j][i] = read_word(ls);
    } else if (tok == "def") {
      int i;
      std::string kind;
      ls >> i >> kind;
      if (i < 2 || i >= n) throw std::invalid_argument("bad def index");
      if (kind == "comm") {
        defs[i].kind = GenDef::kCommutator;
        ls >> defs[i].a >> defs[i].b;
      } else if (kind == "pow") {
        defs[i].kind = GenDef::kPower;
        ls >> defs[i].a;
      } else {
        throw std::invalid_argument("bad def kind");
      }
    } else {
      throw std::invalid_argument("unknown line: " + tok);
    }
  }
  return PcPresentation(std::move(names), std::move(power), std::move(comm),
                        std::move(defs));
}

}  // namespace coforest
