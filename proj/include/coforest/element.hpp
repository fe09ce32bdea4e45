#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <string>

namespace coforest {

inline constexpr int kMaxGens = 24;

/// Normal word relative to a polycyclic generating sequence: an exponent
/// vector of length ngens with entries in {0,1,2}.
struct Element {
  int8_t n = 0;
  std::array<int8_t, kMaxGens> e{};

  static Element identity(int ngens) {
    Element w;
    w.n = static_cast<int8_t>(ngens);
    return w;
  }

  bool is_identity() const {
    for (int i = 0; i < n; ++i)
      if (e[i]) return false;
    return true;
  }

  /// Index of the first nonzero exponent, -1 for the identity.
  int leading() const {
    for (int i = 0; i < n; ++i)
      if (e[i]) return i;
    return -1;
  }

  int last_support() const {
    for (int i = n - 1; i >= 0; --i)
      if (e[i]) return i;
    return -1;
  }

  bool operator==(const Element& o) const {
    if (n != o.n) return false;
    for (int i = 0; i < n; ++i)
      if (e[i] != o.e[i]) return false;
    return true;
  }
  bool operator!=(const Element& o) const { return !(*this == o); }
  bool operator<(const Element& o) const {
    for (int i = 0; i < n; ++i)
      if (e[i] != o.e[i]) return e[i] < o.e[i];
    return false;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < n; ++i) {
      if (i) s += ' ';
      s += char('0' + e[i]);
    }
    return s + "]";
  }
};

struct ElementHash {
  size_t operator()(const Element& w) const {
    size_t h = 1469598103934665603ull;
    for (int i = 0; i < w.n; ++i) {
      h ^= static_cast<size_t>(w.e[i]);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace coforest
