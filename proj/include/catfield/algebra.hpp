#pragma once

// The category algebra R[C]: rig-valued weights on arrows with convolution
// as multiplication. Weights are stored densely in arrow order; entries equal
// to the rig zero are outside the support, and every operation returns its
// result in canonical form (near-zero complex weights snapped to 0).

#include <Eigen/Dense>
#include <span>
#include <string_view>
#include <type_traits>
#include <vector>

#include "catfield/category.hpp"
#include "catfield/error.hpp"
#include "catfield/kernels.hpp"
#include "catfield/rig.hpp"

namespace catfield {

template <Rig R>
class AlgElement {
 public:
  using value_type = typename R::value_type;
  using const_reference = typename std::vector<value_type>::const_reference;

  /// The zero element.
  AlgElement(CategoryPtr cat, R rig) : cat_(std::move(cat)), rig_(std::move(rig)) {
    if (!cat_) fail("algebra.MismatchedCategory", "element needs a category");
    w_.assign(cat_->arrow_count(), rig_.zero());
  }

  /// Throws algebra.MismatchedCategory if `weights` is not one per arrow.
  static AlgElement from_weights(CategoryPtr cat, R rig, std::vector<value_type> weights) {
    AlgElement e(std::move(cat), std::move(rig));
    if (weights.size() != e.w_.size()) {
      fail("algebra.MismatchedCategory", "weight vector length " + std::to_string(weights.size()) +
                                             " does not match " + std::to_string(e.w_.size()) + " arrows");
    }
    e.w_ = std::move(weights);
    e.canonicalize();
    return e;
  }

  const CategoryPtr& category() const { return cat_; }
  const R& rig() const { return rig_; }
  const_reference weight(Index arrow) const { return w_.at(arrow); }
  const std::vector<value_type>& weights() const { return w_; }

  void set(Index arrow, value_type v) { w_.at(arrow) = rig_.canonical(std::move(v)); }
  void set(std::string_view arrow, value_type v) { set(cat_->arrow_index(arrow), std::move(v)); }

  std::vector<Index> support() const {
    std::vector<Index> out;
    for (Index a = 0; a < w_.size(); ++a) {
      if (!rig_.is_zero(w_[a])) out.push_back(a);
    }
    return out;
  }
  bool is_zero() const { return support().empty(); }

  void canonicalize() {
    for (Index a = 0; a < w_.size(); ++a) w_[a] = rig_.canonical(w_[a]);
  }

 private:
  CategoryPtr cat_;
  R rig_;
  std::vector<value_type> w_;
};

using ComplexElement = AlgElement<ComplexRig>;

template <Rig R>
void require_compatible(const AlgElement<R>& a, const AlgElement<R>& b) {
  if (!same_category(a.category(), b.category())) {
    fail("algebra.MismatchedCategory",
         "'" + a.category()->name() + "' vs '" + b.category()->name() + "'");
  }
  if (!same_rig(a.rig(), b.rig())) {
    fail("algebra.MismatchedRig", a.rig().name() + " vs " + b.rig().name());
  }
}

/// Weight 1 on every identity arrow.
template <Rig R>
AlgElement<R> unit(const CategoryPtr& cat, const R& rig) {
  AlgElement<R> e(cat, rig);
  for (Index o = 0; o < cat->object_count(); ++o) e.set(cat->identity(o), rig.one());
  return e;
}

/// Weight 1 on `arrow` only. Throws algebra.UnknownArrow.
template <Rig R>
AlgElement<R> indeterminate(const CategoryPtr& cat, const R& rig, Index arrow) {
  if (arrow >= cat->arrow_count()) fail("algebra.UnknownArrow", "arrow index out of range");
  AlgElement<R> e(cat, rig);
  e.set(arrow, rig.one());
  return e;
}

template <Rig R>
AlgElement<R> indeterminate(const CategoryPtr& cat, const R& rig, std::string_view arrow) {
  auto a = cat->find_arrow(arrow);
  if (!a) fail("algebra.UnknownArrow", "no arrow '" + std::string(arrow) + "' in '" + cat->name() + "'");
  return indeterminate(cat, rig, *a);
}

template <Rig R>
AlgElement<R> add(const AlgElement<R>& a, const AlgElement<R>& b) {
  require_compatible(a, b);
  const R& rig = a.rig();
  if constexpr (std::is_same_v<R, ComplexRig>) {
    std::vector<Complex> w = a.weights();
    kernels::axpy(Complex(1.0, 0.0), b.weights(), w);
    return AlgElement<R>::from_weights(a.category(), rig, std::move(w));
  } else {
    std::vector<typename R::value_type> w(a.weights().size(), rig.zero());
    for (Index i = 0; i < w.size(); ++i) w[i] = rig.add(a.weight(i), b.weight(i));
    return AlgElement<R>::from_weights(a.category(), rig, std::move(w));
  }
}

/// r · a
template <Rig R>
AlgElement<R> scalar_left(const typename R::value_type& r, const AlgElement<R>& a) {
  std::vector<typename R::value_type> w(a.weights().size(), a.rig().zero());
  for (Index i = 0; i < w.size(); ++i) w[i] = a.rig().mul(r, a.weight(i));
  return AlgElement<R>::from_weights(a.category(), a.rig(), std::move(w));
}

/// a · r
template <Rig R>
AlgElement<R> scalar_right(const AlgElement<R>& a, const typename R::value_type& r) {
  std::vector<typename R::value_type> w(a.weights().size(), a.rig().zero());
  for (Index i = 0; i < w.size(); ++i) w[i] = a.rig().mul(a.weight(i), r);
  return AlgElement<R>::from_weights(a.category(), a.rig(), std::move(w));
}

/// a · b: weight at k is the sum over k = l∘r of a(l) b(r).
template <Rig R>
AlgElement<R> convolve(const AlgElement<R>& a, const AlgElement<R>& b) {
  require_compatible(a, b);
  const FinCategory& cat = *a.category();
  const R& rig = a.rig();
  if constexpr (std::is_same_v<R, ComplexRig>) {
    std::vector<Complex> out(cat.arrow_count());
    kernels::convolve(cat.convolution_index(), a.weights(), b.weights(), out);
    return AlgElement<R>::from_weights(a.category(), rig, std::move(out));
  } else {
    std::vector<typename R::value_type> out(cat.arrow_count(), rig.zero());
    for (Index l = 0; l < cat.arrow_count(); ++l) {
      if (rig.is_zero(a.weight(l))) continue;
      for (Index r : cat.arrows_into(cat.dom(l))) {
        if (rig.is_zero(b.weight(r))) continue;
        const Index k = cat.compose(l, r);
        out[k] = rig.add(out[k], rig.mul(a.weight(l), b.weight(r)));
      }
    }
    return AlgElement<R>::from_weights(a.category(), rig, std::move(out));
  }
}

/// a^k by repeated convolution (k = 0 gives the unit).
template <Rig R>
AlgElement<R> power(const AlgElement<R>& a, std::size_t k) {
  AlgElement<R> out = unit(a.category(), a.rig());
  for (std::size_t i = 0; i < k; ++i) out = convolve(out, a);
  return out;
}

/// Per-arrow rig equality (tolerance-based for float rigs).
template <Rig R>
bool approx_equal(const AlgElement<R>& a, const AlgElement<R>& b) {
  require_compatible(a, b);
  for (Index i = 0; i < a.weights().size(); ++i) {
    if (!a.rig().equal(a.weight(i), b.weight(i))) return false;
  }
  return true;
}

/// Largest per-arrow deviation |a(c) - b(c)|.
double max_abs_diff(const ComplexElement& a, const ComplexElement& b);
/// Largest |a(c)|.
double max_abs(const ComplexElement& a);

/// Weight at dagger(c) is the rig involution of a(c). Throws
/// algebra.SupportOutsideCarrier, algebra.NoRigInvolution,
/// algebra.MismatchedCategory.
template <Rig R>
AlgElement<R> involute_element(const AlgElement<R>& a, const InvolutionStructure& inv) {
  if constexpr (!InvolutiveRig<R>) {
    fail("algebra.NoRigInvolution", "rig '" + a.rig().name() + "' has no involution");
  } else {
    if (!same_category(a.category(), inv.category())) {
      fail("algebra.MismatchedCategory", "involution is defined on another category");
    }
    if (!R::commutative && R::involution_variance != inv.variance()) {
      fail("algebra.NoRigInvolution", "rig '" + a.rig().name() + "' has no involution of matching variance");
    }
    const R& rig = a.rig();
    std::vector<typename R::value_type> w(a.weights().size(), rig.zero());
    for (Index c : a.support()) {
      if (!inv.in_carrier(c)) {
        fail("algebra.SupportOutsideCarrier",
             "weight on '" + a.category()->arrow_id(c) + "', which has no dagger");
      }
      w[inv.dagger(c)] = rig.involute(a.weight(c));
    }
    return AlgElement<R>::from_weights(a.category(), rig, std::move(w));
  }
}

/// Carries weights from a wide subcategory into the ambient algebra (matched
/// by arrow id). Throws algebra.NotASubcategory.
template <Rig R>
AlgElement<R> subalgebra_embed(const CategoryPtr& ambient, const AlgElement<R>& a);
/// Checks the inclusion sub -> ambient and returns the arrow map.
std::vector<Index> subcategory_inclusion(const FinCategory& sub, const FinCategory& ambient);

template <Rig R>
AlgElement<R> subalgebra_embed(const CategoryPtr& ambient, const AlgElement<R>& a) {
  const std::vector<Index> map = subcategory_inclusion(*a.category(), *ambient);
  AlgElement<R> out(ambient, a.rig());
  for (Index i = 0; i < map.size(); ++i) out.set(map[i], a.weight(i));
  return out;
}

// --- matrix realization of indiscrete categories ----------------------------------

/// Throws algebra.NotIndiscrete unless every hom-set is a singleton.
void require_indiscrete(const FinCategory& cat);
/// Entry (i, j) is the weight of the unique arrow j -> i.
Eigen::MatrixXcd to_matrix(const ComplexElement& a);
ComplexElement from_matrix(const CategoryPtr& cat, const Eigen::MatrixXcd& m);
/// Matrix-rig weights assembled blockwise: block (i, j) is the weight of j -> i.
Eigen::MatrixXcd to_block_matrix(const AlgElement<MatrixRig>& a);

// --- center -----------------------------------------------------------------------------

inline constexpr std::size_t kMaxCenterArrows = 200;

/// Basis of { alpha : iota^c alpha = alpha iota^c for all arrows c }, optionally
/// restricted to elements supported on `allowed` arrows. Real weights,
/// orthonormal as vectors. Throws algebra.TooLarge above kMaxCenterArrows.
std::vector<ComplexElement> center_basis(const CategoryPtr& cat, const std::vector<bool>* allowed = nullptr,
                                         double rel_tol = kDefaultTolerance);
namespace detail {
/// center_basis without the size guard; used by local algebras on lattices
/// past the public limit, where the endomorphism reduction keeps it cheap.
std::vector<ComplexElement> center_basis_unbounded(const CategoryPtr& cat, const std::vector<bool>* allowed,
                                                   double rel_tol);
}  // namespace detail

/// Runtime-rig entry point; throws algebra.UnsupportedRig for non-complex rigs.
std::vector<ComplexElement> center_basis(const CategoryPtr& cat, const RigSpec& rig);

}  // namespace catfield
