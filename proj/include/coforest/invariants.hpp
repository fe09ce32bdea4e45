#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "coforest/abelian.hpp"
#include "coforest/pc_presentation.hpp"
#include "coforest/subgroup.hpp"

namespace coforest {

/// Transfer kernel type: entry i is 0 when the i-th transfer has total
/// kernel, otherwise the index (1..4) of the maximal subgroup the kernel
/// equals.
struct TransferKernelType {
  std::array<int, 4> kappa{0, 0, 0, 0};

  bool operator==(const TransferKernelType&) const = default;
  bool operator<(const TransferKernelType& o) const { return kappa < o.kappa; }
  std::string str() const;  // "(0043)"
  static TransferKernelType parse(const std::string& text);

  /// Lexicographically least tuple under simultaneous relabeling: a
  /// permutation of {1..4} acting on positions and on nonzero values.
  TransferKernelType canonical_class() const;
};

bool tkt_equivalent(const TransferKernelType& a, const TransferKernelType& b);

/// Tristate for the action flags: above the search bound nothing is claimed.
enum class Flag : int8_t { kNo = 0, kYes = 1, kUndetermined = -1 };

struct GroupInvariants {
  int lo = 0, cl = 0, cc = 0, dl = 0;
  AbelianType zeta;
  TransferKernelType kappa;        // raw tuple under the canonical order
  TransferKernelType kappa_class;  // canonical representative
  std::array<AbelianType, 4> tau;
  AbelianType tau1;
  AbelianType tau2;
  int defect = 0;  // k in {0,1}
  Flag gi = Flag::kUndetermined;
  Flag v4 = Flag::kUndetermined;
  /// sigma per the action-flag encoding; -1 when undetermined.
  int sigma() const {
    if (gi == Flag::kUndetermined) return -1;
    if (gi == Flag::kNo) return 0;
    if (v4 == Flag::kUndetermined) return -1;
    return v4 == Flag::kYes ? 2 : 1;
  }
};

struct InvariantOptions {
  long gi_bound = 59049;  // 3^10
  long v4_bound = 6561;   // 3^8
};

/// The four index-3 subgroups in the canonical order: the one containing the
/// two-step centralizer chi_2(G) first when cl >= 3 and chi_2 is maximal,
/// the rest by coset representative in the fixed order y, x, xy, xy^2.
std::vector<InducedSubgroup> maximal_subgroups(const PcPresentation& p);

/// Transfer map (Verlagerung) to an index-3 subgroup: image in U/U' of the
/// coset x^a y^b G', evaluated through an explicit transversal.
class Transfer {
 public:
  Transfer(const PcPresentation& p, const InducedSubgroup& u);
  /// With an explicitly chosen transversal element t outside U.
  Transfer(const PcPresentation& p, const InducedSubgroup& u, Element t);
  /// Image of the coset x^a y^b G' (as an element of U, mod U').
  Element image(int a, int b) const;
  bool in_kernel(int a, int b) const;
  const InducedSubgroup& uprime() const { return uprime_; }

 private:
  const PcPresentation& p_;
  InducedSubgroup u_;
  InducedSubgroup uprime_;
  std::array<Element, 3> transversal_;
};

TransferKernelType tkt(const PcPresentation& p);
TransferKernelType tkt_for(const PcPresentation& p,
                           const std::vector<InducedSubgroup>& maxsubs);

/// Transfer target type plus distinguished components.
struct Ttt {
  std::array<AbelianType, 4> tau;
  AbelianType tau1;
  AbelianType tau2;
};
Ttt ttt(const PcPresentation& p);

/// Two-step centralizer {g : [g, gamma_2] <= gamma_4}.
InducedSubgroup two_step_centralizer(const PcPresentation& p);
/// Defect of commutativity per [chi_2 G, gamma_2 G] = gamma_{c+1-k} G;
/// 0 by convention below class 3.
int defect(const PcPresentation& p);

struct ActionFlags {
  Flag gi = Flag::kUndetermined;
  Flag v4 = Flag::kUndetermined;
};
/// GI-action: an automorphism inverting both generators mod G'. V4-action:
/// Aut(G) contains C2 x C2; detected through the induced subgroup of
/// GL(2,3). Above the bounds the flags report undetermined, never a guess.
ActionFlags gi_v4_flags(const PcPresentation& p, long gi_bound, long v4_bound);

GroupInvariants compute_invariants(const PcPresentation& p,
                                   const InvariantOptions& opts = {});

/// Searches for an automorphism of p acting on G/G' by the given 2x2 matrix
/// over F_3 (columns are the images of x and y). Returns the generator
/// images when one exists.
std::optional<std::pair<Element, Element>> automorphism_with_action(
    const PcPresentation& p, const std::array<std::array<int, 2>, 2>& mat);

}  // namespace coforest
