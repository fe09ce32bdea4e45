#pragma once

#include <vector>

#include "coforest/element.hpp"
#include "coforest/pc_presentation.hpp"

namespace coforest {

/// Echelonized polycyclic generating sequence of a subgroup: one generator
/// per occupied pc depth, leading depths strictly increasing. Supports
/// membership by sifting; |U| = 3^(number of generators).
class InducedSubgroup {
 public:
  InducedSubgroup() = default;

  static InducedSubgroup trivial(const PcPresentation& p);
  static InducedSubgroup whole(const PcPresentation& p);
  /// Smallest subgroup containing the seeds; with `normal` the smallest
  /// normal subgroup (closure under conjugation by all pc generators).
  static InducedSubgroup close(const PcPresentation& p,
                               const std::vector<Element>& seeds, bool normal);

  int order_log() const { return static_cast<int>(gens_.size()); }
  const std::vector<Element>& gens() const { return gens_; }
  /// Residue of w after eliminating the leading depths of the subgroup;
  /// identity iff w is a member.
  Element sift(const PcPresentation& p, Element w) const;
  /// Like sift, but also reports the exponents used per subgroup generator.
  Element sift_coords(const PcPresentation& p, Element w,
                      std::vector<int>* coords) const;
  bool contains(const PcPresentation& p, const Element& w) const {
    return sift(p, w).is_identity();
  }
  bool contains_subgroup(const PcPresentation& p,
                         const InducedSubgroup& u) const;
  bool equals(const PcPresentation& p, const InducedSubgroup& u) const;
  bool is_normal(const PcPresentation& p) const;
  /// Reduces w to the canonical coset representative supported away from the
  /// subgroup's depths (zeroes every occupied depth, scanning upward).
  Element coset_reduce(const PcPresentation& p, Element w) const;
  const std::vector<int>& depths() const { return depths_; }
  bool has_depth(int d) const;

 private:
  void insert(const PcPresentation& p, Element w);
  std::vector<Element> gens_;  // sorted by leading depth
  std::vector<int> depths_;
};

std::vector<InducedSubgroup> lower_central_series(const PcPresentation& p);
std::vector<InducedSubgroup> derived_series(const PcPresentation& p);
InducedSubgroup derived_subgroup(const PcPresentation& p);
/// [U,U] closed under conjugation (equals the derived subgroup of U for
/// normal U).
InducedSubgroup subgroup_derived(const PcPresentation& p,
                                 const InducedSubgroup& u);
/// [A,B] as a normal subgroup.
InducedSubgroup commutator_subgroup(const PcPresentation& p,
                                    const InducedSubgroup& a,
                                    const InducedSubgroup& b);
InducedSubgroup centre(const PcPresentation& p);

int nilpotency_class(const PcPresentation& p);
int derived_length(const PcPresentation& p);

/// Quotient G/N by a normal subgroup, presented on the pc generators at the
/// complement depths, together with the natural projection and a lift.
struct Quotient {
  PcPresentation group;
  std::vector<int> kept;  // kept[i] = original depth of quotient generator i

  Element project(const PcPresentation& parent, const InducedSubgroup& n,
                  const Element& w) const;
  Element lift(const Element& w, int parent_ngens) const;
};

Quotient make_quotient(const PcPresentation& p, const InducedSubgroup& n);

}  // namespace coforest
