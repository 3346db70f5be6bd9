#pragma once

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "catfield/algebra.hpp"
#include "catfield/category.hpp"
#include "catfield/rig.hpp"

namespace catfield {

class CausalCategory {
 public:
  const CategoryPtr& category() const { return cat_; }
  const FinCategory& cat() const { return *cat_; }
  bool is_causal(Index arrow) const { return causal_[arrow]; }
  const std::vector<bool>& causal_mask() const { return causal_; }
  /// p ⤳ q: some causal arrow p -> q.
  bool precedes(Index p, Index q) const { return order_[p * cat_->object_count() + q]; }
  const std::optional<InvolutionStructure>& involution() const { return involution_; }

 private:
  friend CausalCategory make_causal(const CategoryPtr&, std::span<const Index>, std::optional<InvolutionStructure>);
  CategoryPtr cat_;
  std::vector<bool> causal_;
  std::vector<bool> order_;
  std::optional<InvolutionStructure> involution_;
};

/// Throws causal.NotWide, causal.NotClosed, causal.MismatchedCategory.
CausalCategory make_causal(const CategoryPtr& cat, std::span<const Index> causal,
                           std::optional<InvolutionStructure> involution = std::nullopt);
/// Every arrow causal.
CausalCategory make_causal(const CategoryPtr& cat, std::optional<InvolutionStructure> involution = std::nullopt);

enum class LatticeFlavor { Thin, Indiscrete };

inline constexpr std::size_t kMaxLatticePoints = 64;

/// Points "t,x" in {0..T-1} x {0..X-1}; (t,x) ⤳ (t',x') iff t'-t >= |x'-x|.
/// Thin: the preorder category of that order, every arrow causal, trivial
/// involution. Indiscrete: one arrow "p->q" for every ordered pair, the
/// light-cone arrows causal, arrow reversal as involution on all arrows.
/// Throws causal.TooLarge past kMaxLatticePoints points.
CausalCategory minkowski_lattice(std::size_t time_extent, std::size_t space_extent, LatticeFlavor flavor);
std::string lattice_point(std::size_t t, std::size_t x);

// --- object subsets --------------------------------------------------------------

/// Object mask from identifiers; throws causal.UnknownObject.
std::vector<bool> object_set(const FinCategory& cat, const std::vector<std::string>& ids);
std::vector<bool> object_set(const FinCategory& cat, std::span<const Index> objects);
std::vector<Index> members(const std::vector<bool>& mask);

// --- relevant categories ------------------------------------------------------------

enum class RelevantForm { Inner, OutAfterInner, InnerAfterIn, OutInnerIn, OutsideIdentity };
const char* form_name(RelevantForm form);

/// Decomposition a = out ∘ inner ∘ in; unused slots hold kNone.
struct FormWitness {
  Index out = kNone;
  Index inner = kNone;
  Index in = kNone;
};

struct RegionSelection {
  std::vector<bool> objects;           // O
  std::vector<bool> relevant;          // arrows of O^rel
  std::vector<std::optional<RelevantForm>> form;  // set exactly on relevant arrows
  std::vector<std::optional<FormWitness>> witness;  // empty when no decomposition was found

  bool in_region(Index obj) const { return objects[obj]; }
  std::vector<Index> relevant_arrows() const { return members(relevant); }
  bool is_outside_identity(Index arrow) const {
    return form[arrow] && *form[arrow] == RelevantForm::OutsideIdentity;
  }
};

/// Closure of the four generating families, tagged by endpoint membership,
/// each tag backed by a search for an explicit decomposition.
RegionSelection relevant_category(const CausalCategory& cc, const std::vector<bool>& objects);

struct StructureReport {
  std::size_t relevant = 0;
  std::size_t unclassified = 0;
  std::size_t inconsistent = 0;  // tag contradicts endpoints or witness fails to compose
  std::string first_problem;
  bool ok() const { return unclassified == 0 && inconsistent == 0; }
};
/// Re-verifies every tag and witness against the ambient composition.
StructureReport check_structure(const CausalCategory& cc, const RegionSelection& sel);

bool spacelike_separated(const CausalCategory& cc, const std::vector<bool>& a, const std::vector<bool>& b);

enum class RegionReading {
  CausalConvexity,   // no outside C with causal A -> C -> A', A, A' in O
  OutsideIdentity,   // no outside identity factors nontrivially inside O^rel
};
bool is_region(const CausalCategory& cc, const std::vector<bool>& objects,
               RegionReading reading = RegionReading::CausalConvexity);

/// Arrows of O^rel in the involution carrier whose dagger also lies in O^rel.
/// Throws causal.NoPartialInvolution.
std::vector<bool> involutive_relevant(const CausalCategory& cc, const RegionSelection& sel);

struct CrossPair {
  Index first = kNone;
  Index second = kNone;
};
/// Composable pairs (c, c') with c in O^rel, c' in O'^rel (and the swapped
/// roles), excluding outside identities of either region and pairs of
/// identities. Empty for spacelike separated O, O'.
std::vector<CrossPair> composable_cross_pairs(const CausalCategory& cc, const RegionSelection& a,
                                              const RegionSelection& b);

// --- local algebras ------------------------------------------------------------------

struct LocalAlgebraBasis {
  RegionSelection region;
  bool with_involution = false;
  RigSpec rig;
  std::vector<Index> span_main;  // indeterminates
  /// Complex rig: a basis of R[O^rel] ∩ Z(R[C]). Other rigs leave this empty
  /// and the central part is Z(R)·ε.
  std::vector<ComplexElement> span_central;
  bool central_is_unit_multiples = false;
};

/// Throws causal.NotARegion, causal.NoPartialInvolution, causal.UnsupportedRig,
/// causal.NotClosed (the assembled span failed the product check).
LocalAlgebraBasis local_algebra(const CausalCategory& cc, const std::vector<bool>& objects, const RigSpec& rig,
                                bool with_involution, RegionReading reading = RegionReading::CausalConvexity);

/// Random α + δ with α on span_main and δ central.
template <Rig R>
AlgElement<R> sample_local_element(const CausalCategory& cc, const LocalAlgebraBasis& basis, const R& rig,
                                   std::mt19937_64& gen) {
  AlgElement<R> out(cc.category(), rig);
  for (Index a : basis.span_main) out.set(a, rig.sample(gen));
  if constexpr (std::is_same_v<R, ComplexRig>) {
    for (const auto& d : basis.span_central) out = add(out, scalar_left(rig.sample(gen), d));
  } else {
    typename R::value_type z = rig.sample(gen);
    if constexpr (std::is_same_v<R, MatrixRig>) {
      z = rig.one() * rig.sample(gen)(0, 0);
    }
    out = add(out, scalar_left(z, unit(cc.category(), rig)));
  }
  return out;
}

}  // namespace catfield
