#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "coforest/families.hpp"
#include "coforest/invariants.hpp"
#include "coforest/morphism.hpp"

namespace coforest {

/// Cheap invariant screen computed before any search. Isomorphic groups have
/// equal fingerprints; the expensive fields record whether they were
/// computed so equality semantics never change silently.
struct Fingerprint {
  int lo = 0, cl = 0, cc = 0, dl = 0, defect = 0;
  AbelianType zeta, tau2;
  TransferKernelType kappa_class;
  std::vector<AbelianType> tau_sorted;
  bool has_order_histogram = false;
  std::vector<std::pair<long, long>> order_histogram;  // (element order, count)
  bool has_conjugacy = false;
  std::vector<long> conjugacy_sizes;

  bool operator==(const Fingerprint&) const = default;
  bool operator<(const Fingerprint& o) const;
};

/// Orders up to which the enumerative fingerprint fields are filled.
inline constexpr long kFingerprintEnumBound = 2187;  // 3^7

Fingerprint fingerprint(const PcPresentation& p);
Fingerprint fingerprint_from(const GroupInvariants& inv,
                             const PcPresentation& p);

enum class IsoVerdict { kYes, kNo, kUndetermined };

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::kUndetermined;
  /// Verified generator images for a kYes answer within the bound.
  std::optional<std::pair<Element, Element>> map;
};

inline constexpr long kDefaultIsoBound = 6561;  // 3^8

/// Certified isomorphism test when both orders are within the bound
/// (fingerprint screen, then backtracking over generator images along the
/// lower central chain). Above the bound: kNo for distinct fingerprints,
/// kUndetermined for equal ones.
IsoResult isomorphic(const PcPresentation& a, const PcPresentation& b,
                     long bound = kDefaultIsoBound);

/// A constructed group with its cached classification data.
struct ClassifiedGroup {
  GroupSelector sel;
  std::shared_ptr<PcPresentation> pres;
  GroupInvariants inv;
  Fingerprint fp;
  std::shared_ptr<GroupChain> chain;  // lazily built

  const GroupChain& ensure_chain() {
    if (!chain) chain = std::make_shared<GroupChain>(*pres);
    return *chain;
  }
};

ClassifiedGroup classify(const GroupSelector& sel, const PcPresentation& p,
                         const InvariantOptions& opts = {});

struct DedupResult {
  /// indices of class representatives (lexicographically least selector),
  /// ordered by representative selector
  std::vector<size_t> reps;
  /// class id per pool element, indexing into reps
  std::vector<int> class_of;
  bool certified = true;  // false when any merge relied on fingerprints only
};

/// Partitions the pool into isomorphism classes. Searches run only inside
/// fingerprint buckets; merges above the bound are fingerprint-trusted and
/// mark the result as not certified.
DedupResult dedup(std::vector<ClassifiedGroup>& pool, long bound,
                  int jobs = 1);

}  // namespace coforest
