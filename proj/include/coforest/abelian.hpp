#pragma once

#include <string>
#include <vector>

#include "coforest/pc_presentation.hpp"
#include "coforest/subgroup.hpp"

namespace coforest {

/// Abelian type invariants in logarithmic notation: a weakly decreasing
/// sequence of logarithmic cyclic orders, e.g. (3,2) printed "32" and
/// (2,1,1,1) printed "2³1". The trivial group prints as "0".
struct AbelianType {
  std::vector<int> logs;  // weakly decreasing, entries >= 1

  int order_log() const {
    int s = 0;
    for (int v : logs) s += v;
    return s;
  }
  bool operator==(const AbelianType&) const = default;
  bool operator<(const AbelianType& o) const { return logs < o.logs; }

  std::string str() const;
  static AbelianType parse(const std::string& text);

  /// A(3,u) x A(3,v) as a merged type.
  static AbelianType nearly_homocyclic_product(int u, int v);
  static AbelianType of_nearly_homocyclic(int n);
};

/// Smith normal form diagonal of an integer relation matrix (rows are
/// relations over the column generators); returns the abelian type of the
/// presented 3-group. Throws if an invariant factor is not a power of 3.
AbelianType abelian_type_from_relations(const std::vector<std::vector<long>>& rows,
                                        int ncols);

/// Abelian quotient invariants of U/U' computed from the induced
/// presentation of U and the Smith normal form of its abelianized relation
/// matrix.
AbelianType abelian_invariants(const PcPresentation& p,
                               const InducedSubgroup& u);

}  // namespace coforest
