#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace catfield {

using Index = std::uint32_t;
inline constexpr Index kNone = std::numeric_limits<Index>::max();

/// Exhaustive checks and the dense composition table are sized for desk-scale
/// categories.
inline constexpr std::size_t kMaxArrows = 4096;

struct ArrowSpec {
  std::string id;
  std::string dom;
  std::string cod;
};

/// Raw, unvalidated category description (mirrors the JSON category format).
struct CategoryDescription {
  std::string name;
  std::vector<std::string> objects;
  std::vector<ArrowSpec> arrows;
  std::map<std::string, std::string> identities;          // object -> arrow
  std::vector<std::array<std::string, 3>> compose;         // {g, f, g∘f}
};

/// Flat factorization lists: for composite k, entries [offsets[k], offsets[k+1])
/// of `left`/`right` enumerate every pair with k = left ∘ right.
struct ConvolutionIndex {
  std::vector<Index> offsets;
  std::vector<Index> left;
  std::vector<Index> right;
};

class FinCategory;
using CategoryPtr = std::shared_ptr<const FinCategory>;

/// An explicit finite category. Immutable once validated; object and arrow
/// indices follow declaration order.
class FinCategory {
 public:
  /// Checks all four category conditions exhaustively. Throws
  /// category.{DanglingEndpoint, MissingComposite, AssociativityViolation,
  /// IdentityViolation, MalformedDescription, TooLarge}.
  static CategoryPtr validate(const CategoryDescription& raw);

  const std::string& name() const { return name_; }
  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrow_ids_.size(); }

  const std::string& object_id(Index obj) const { return objects_.at(obj); }
  const std::string& arrow_id(Index arrow) const { return arrow_ids_.at(arrow); }
  std::optional<Index> find_object(std::string_view id) const;
  std::optional<Index> find_arrow(std::string_view id) const;
  /// Throws category.UnknownObject / category.UnknownArrow.
  Index object_index(std::string_view id) const;
  Index arrow_index(std::string_view id) const;

  Index dom(Index arrow) const { return dom_[arrow]; }
  Index cod(Index arrow) const { return cod_[arrow]; }
  Index identity(Index obj) const { return identity_[obj]; }
  bool is_identity(Index arrow) const { return identity_[dom_[arrow]] == arrow; }

  /// g ∘ f, or kNone when dom(g) != cod(f).
  Index compose(Index g, Index f) const {
    return compose_[static_cast<std::size_t>(g) * arrow_count() + f];
  }

  std::span<const Index> arrows_into(Index obj) const { return into_[obj]; }
  std::span<const Index> arrows_out_of(Index obj) const { return out_of_[obj]; }
  std::vector<Index> hom(Index from, Index to) const;

  const ConvolutionIndex& convolution_index() const { return conv_; }

  /// Round-trips through validate().
  CategoryDescription describe() const;

  /// Wide subcategory on the arrows flagged in `mask`. Throws
  /// category.NotASubcategory when identities are missing or the set is not
  /// closed under composition.
  CategoryPtr wide_subcategory(const std::vector<bool>& mask, std::string name = {}) const;

  /// Subcategory generated by `arrows`: closure under composition together
  /// with the identities of every endpoint; keeps only the touched objects.
  CategoryPtr generated_subcategory(std::span<const Index> arrows, std::string name = {}) const;

  /// Arrow-for-arrow structural equality (ids, endpoints, composition).
  bool same_structure(const FinCategory& other) const;

 private:
  FinCategory() = default;
  void build_indexes();

  std::string name_;
  std::vector<std::string> objects_;
  std::vector<std::string> arrow_ids_;
  std::unordered_map<std::string, Index> object_lookup_;
  std::unordered_map<std::string, Index> arrow_lookup_;
  std::vector<Index> dom_, cod_, identity_;
  std::vector<Index> compose_;
  std::vector<std::vector<Index>> into_, out_of_;
  ConvolutionIndex conv_;
};

bool same_category(const CategoryPtr& a, const CategoryPtr& b);

// --- standard generators ----------------------------------------------------

/// Objects "1".."n", identities "id_k".
CategoryPtr make_discrete(std::size_t n);
/// Objects "1".."n"; arrow "a<i>_<j>" is the unique arrow j -> i.
CategoryPtr make_indiscrete(std::size_t n);
/// One arrow "p->q" per related pair. Throws category.NotAPreorder.
CategoryPtr make_preorder(const std::vector<std::string>& objects,
                          const std::vector<std::pair<std::string, std::string>>& relation,
                          std::string name = "preorder");
/// Single object "*"; table[g][h] = g∘h. Throws category.NotAssociativeTable.
CategoryPtr make_monoid(const std::vector<std::string>& elements,
                        const std::vector<std::vector<std::size_t>>& table,
                        std::string name = "monoid");
/// As make_monoid, additionally throws category.NoInverse.
CategoryPtr make_group(const std::vector<std::string>& elements,
                       const std::vector<std::vector<std::size_t>>& table,
                       std::string name = "group");
/// Z/n with elements "g0".."g<n-1>", g_i ∘ g_j = g_{i+j mod n}.
CategoryPtr make_cyclic_group(std::size_t n);
/// S3 as permutations of {0,1,2}; composition is composition of maps.
CategoryPtr make_symmetric_group3();

struct GraphEdge {
  std::string id;
  std::string src;
  std::string dst;
};
/// Free category of a finite acyclic graph: all finite paths, concatenation
/// as composition. A path g after f is named "g.f". Throws category.GraphHasCycle.
CategoryPtr make_free_acyclic(const std::vector<std::string>& vertices,
                              const std::vector<GraphEdge>& edges,
                              std::string name = "free");
/// Same arrows with dom/cod swapped and composition reversed.
CategoryPtr make_opposite(const FinCategory& cat);

/// Wide subcategory of all invertible arrows.
CategoryPtr core_groupoid(const CategoryPtr& cat);
/// Two-sided inverse of `arrow`, if any.
std::optional<Index> inverse_of(const FinCategory& cat, Index arrow);

// --- functors and involutions -------------------------------------------------

enum class Variance { Covariant, Contravariant };

struct FunctorMap {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<Index> object_map;
  std::vector<Index> arrow_map;
  Variance variance = Variance::Covariant;
};

/// Throws category.NotAFunctor naming the first offending arrow or pair.
void check_functor(const FunctorMap& f);
FunctorMap identity_functor(const CategoryPtr& cat);
/// outer ∘ inner; variance multiplies.
FunctorMap compose_functors(const FunctorMap& outer, const FunctorMap& inner);
/// Inverse of a functor bijective on objects and arrows, if it is one.
std::optional<FunctorMap> inverse_functor(const FunctorMap& f);
bool same_functor(const FunctorMap& a, const FunctorMap& b);

/// A (partial) involution: a wide subcategory (the carrier) with an
/// involutive functor on it.
class InvolutionStructure {
 public:
  const CategoryPtr& category() const { return cat_; }
  Variance variance() const { return variance_; }
  /// Contravariant and identity on objects.
  bool is_dagger() const { return dagger_structure_; }
  bool in_carrier(Index arrow) const { return carrier_[arrow]; }
  const std::vector<bool>& carrier_mask() const { return carrier_; }
  std::vector<Index> carrier_arrows() const;
  bool carrier_is_whole() const;
  /// Image of a carrier arrow; kNone off the carrier.
  Index dagger(Index arrow) const { return dagger_[arrow]; }

  /// The same involution on a smaller carrier. Throws category.* as
  /// validate_involution does.
  InvolutionStructure restricted(const std::vector<bool>& mask) const;

 private:
  friend InvolutionStructure validate_involution(const CategoryPtr&, std::span<const Index>,
                                                 const std::vector<Index>&, Variance);
  CategoryPtr cat_;
  std::vector<bool> carrier_;
  std::vector<Index> dagger_;
  Variance variance_ = Variance::Contravariant;
  bool dagger_structure_ = false;
};

/// `dagger` is indexed by ambient arrow; only carrier entries are read.
/// Throws category.{ObjectsNotCovered, NotClosedUnderComposition,
/// NotInvolutive, VarianceViolation}.
InvolutionStructure validate_involution(const CategoryPtr& cat, std::span<const Index> carrier,
                                        const std::vector<Index>& dagger, Variance variance);

/// Carrier = identities, dagger = id.
InvolutionStructure trivial_involution(const CategoryPtr& cat);
/// Carrier = all arrows, dagger = inverse. Requires a groupoid (indiscrete
/// categories and groups included); throws category.NotAGroupoid otherwise.
InvolutionStructure inverse_involution(const CategoryPtr& cat);

}  // namespace catfield
