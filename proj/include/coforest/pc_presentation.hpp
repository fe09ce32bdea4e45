#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "coforest/element.hpp"

namespace coforest {

/// How a pc generator arises from the two group generators x = g0, y = g1.
/// Every generator beyond x, y is defined either as a commutator [g_a, g_b]
/// of earlier generators or as a third power g_a^3.
struct GenDef {
  enum Kind : uint8_t { kGenerator, kCommutator, kPower };
  Kind kind = kGenerator;
  int a = -1;
  int b = -1;
};

struct ConsistencyReport {
  bool consistent = true;
  // first violated overlap, if any
  std::string violation;
};

/// Consistent polycyclic power-commutator presentation of a finite 3-group.
/// All relative orders are 3; power and commutator relation words involve
/// only later generators. Immutable after construction; all operations are
/// pure and safe to call concurrently.
class PcPresentation {
 public:
  /// Builds a presentation from relation tables. power[i] is the normal word
  /// of g_i^3, comm[j][i] (j > i) the normal word of [g_j, g_i]; both must be
  /// supported on indices > i resp. > j. Throws std::invalid_argument on
  /// malformed input.
  PcPresentation(std::vector<std::string> names, std::vector<Element> power,
                 std::vector<std::vector<Element>> comm,
                 std::vector<GenDef> defs);

  int ngens() const { return n_; }
  int order_log() const { return n_; }
  const std::string& name(int i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  const Element& power(int i) const { return power_[i]; }
  const Element& comm(int j, int i) const { return comm_[j][i]; }
  bool comm_trivial(int j, int i) const { return comm_triv_[j][i]; }
  const std::vector<GenDef>& defs() const { return defs_; }

  Element gen(int i) const;
  /// Normal word g_{i1}^{e1}...g_{ik}^{ek} for index/exponent pairs with
  /// strictly increasing indices.
  Element word(const std::vector<std::pair<int, int>>& sylls) const;

  /// Collected product of two normal words.
  Element mul(const Element& a, const Element& b) const;
  Element inv(const Element& a) const;
  /// a^b = b^-1 a b
  Element conj(const Element& a, const Element& b) const;
  /// [a,b] = a^-1 b^-1 a b
  Element commutator(const Element& a, const Element& b) const;
  Element pow(Element a, long k) const;

  /// Multiplicative order (a power of 3).
  long element_order(const Element& a) const;

  /// Overlap conditions (triple associativity and power overlaps). Passes
  /// iff the presented group has exactly 3^ngens elements.
  ConsistencyReport check_consistency() const;

  void validate(const Element& w) const;

  /// Canonical text form; round-trips exactly through parse().
  std::string serialize() const;
  static PcPresentation parse(const std::string& text);

  bool same_presentation(const PcPresentation& o) const {
    return names_ == o.names_ && power_ == o.power_ && comm_ == o.comm_;
  }

 private:
  Element mul_gen(const Element& u, int i) const;       // u * g_i
  Element mul_word(Element u, const Element& w) const;  // u * w, w normal-ish
  Element conj_tail_by_gen(const Element& t, int i) const;

  int n_;
  std::vector<std::string> names_;
  std::vector<Element> power_;
  std::vector<std::vector<Element>> comm_;  // comm_[j][i] for j > i
  std::vector<std::vector<bool>> comm_triv_;
  std::vector<Element> geninv_;
  std::vector<GenDef> defs_;
};

}  // namespace coforest
