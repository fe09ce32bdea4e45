#pragma once

#include <array>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "coforest/pc_presentation.hpp"
#include "coforest/subgroup.hpp"

namespace coforest {

using GlMatrix = std::array<std::array<int, 2>, 2>;  // columns = images of x, y

std::vector<GlMatrix> gl23_all();
std::vector<GlMatrix> gl23_reflections();  // order-2 elements other than -I
GlMatrix gl23_minus_identity();

/// Cached lower-central quotient chain of a group, with the per-level data
/// the lifting search needs: the elementary layer, the centralizer used to
/// collapse conjugation-translates, and the centre chain.
class GroupChain {
 public:
  explicit GroupChain(const PcPresentation& g);

  const PcPresentation& group() const { return g_; }
  int cls() const { return cls_; }
  int levels() const { return static_cast<int>(levels_.size()); }

  struct Level {
    std::unique_ptr<PcPresentation> pres;  // null for the top level (= G)
    std::vector<int> kept;                 // depths of the level's generators
    std::vector<Element> layer;            // pcgs of ker(level -> previous)
    InducedSubgroup layer_sub;             // same, as subgroup for sifting
    std::vector<Element> centralizer;      // pcgs of preimage of Z(previous)
  };
  const Level& level(int k) const { return levels_[k]; }
  const PcPresentation& level_group(int k) const {
    return levels_[k].pres ? *levels_[k].pres : g_;
  }
  /// Signature used for fast rejection: per-level orders.
  const std::vector<int>& layer_logs() const { return layer_logs_; }

 private:
  PcPresentation g_;
  int cls_;
  std::vector<Level> levels_;
  std::vector<int> layer_logs_;
};

struct MorphismSearchStats {
  long candidates = 0;
  long max_frontier = 0;
};

/// Finds generator images (phi(x), phi(y)) in B's group defining an
/// isomorphism A -> B whose action on the commutator quotients is the given
/// matrix; searches all of GL(2,3) when no matrix is given. Exhaustive and
/// certificate-backed: a returned pair satisfies every relation of A.
std::optional<std::pair<Element, Element>> find_isomorphism(
    const GroupChain& a, const GroupChain& b,
    const std::optional<GlMatrix>& mat = std::nullopt,
    MorphismSearchStats* stats = nullptr);

/// Re-verifies a candidate pair against all relations of A; true iff the
/// pair defines an isomorphism.
bool verify_isomorphism(const PcPresentation& a, const PcPresentation& b,
                        const Element& img_x, const Element& img_y);

}  // namespace coforest
