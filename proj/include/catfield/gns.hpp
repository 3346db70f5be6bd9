#pragma once

#include <Eigen/Dense>
#include <vector>

#include "catfield/algebra.hpp"
#include "catfield/states.hpp"

namespace catfield {

inline constexpr double kGnsCheckTolerance = 1e-8;
inline constexpr double kMinCliffRatio = 10.0;

struct GnsSpace {
  CategoryPtr category;
  std::size_t dimension = 0;
  Eigen::MatrixXcd gram;       // G[c', c] = phi(c'† ∘ c), zero when not composable
  Eigen::VectorXd spectrum;    // eigenvalues of gram, ascending
  Eigen::MatrixXcd basis_map;  // arrows x dimension; columns are an orthonormal basis of the quotient
  Eigen::VectorXcd vacuum;     // class of ε
  std::vector<Eigen::MatrixXcd> rep;  // pi(iota^c) per arrow
  double rank_tolerance = 0.0;
  double cliff_ratio = 0.0;    // smallest kept / largest dropped eigenvalue

  /// Coordinates of the class of `a`.
  Eigen::VectorXcd vector(const ComplexElement& a) const;
  Eigen::MatrixXcd represent(const ComplexElement& a) const;
};

/// Throws gns.{UnsupportedRig, CarrierNotWholeCategory, NotPSD,
/// DegenerateTolerance, InvariantViolation}.
GnsSpace gns_construct(const State& s, double tol = kDefaultTolerance);

struct ObjectModuleMap {
  Index source_object = kNone;
  Index target_object = kNone;
  std::vector<Index> source_arrows;  // codomain = dom(c)
  std::vector<Index> target_arrows;  // codomain = cod(c)
  Eigen::MatrixXcd matrix;           // target x source
};

/// Left multiplication by iota^c between per-object submodules.
/// Throws gns.UnknownArrow.
ObjectModuleMap module_map(const FinCategory& cat, Index c);

struct ContractivityResult {
  bool holds = false;
  double operator_bound = 0.0;
  bool null_implication = true;  // phi(a* a) = 0 forces phi((iota^c a)*(iota^c a)) = 0
};

/// Largest generalized eigenvalue of (M^H G_cod M, G_dom) on the complement of
/// the null space of G_dom, plus the null-space implication.
ContractivityResult contractivity_from_blocks(const Eigen::MatrixXcd& g_dom, const Eigen::MatrixXcd& g_cod,
                                              const Eigen::MatrixXcd& m, double tol = kDefaultTolerance);
ContractivityResult contractivity_check(const State& s, Index c, double tol = kDefaultTolerance);

/// The induced map between the quotients of the per-object modules, in
/// orthonormal bases of each. Throws gns.ContractivityFails naming the arrow.
Eigen::MatrixXcd hilbert_functor_map(const State& s, Index c, double tol = kDefaultTolerance);
/// Block-level core of hilbert_functor_map; throws gns.ContractivityFails.
Eigen::MatrixXcd induced_map_from_blocks(const Eigen::MatrixXcd& g_dom, const Eigen::MatrixXcd& g_cod,
                                         const Eigen::MatrixXcd& m, double tol = kDefaultTolerance);

/// Per-object Gram block G_Y[c', c] = phi(c'† ∘ c), arrows with codomain Y.
Eigen::MatrixXcd object_gram(const State& s, Index object, std::vector<Index>* labels = nullptr);

}  // namespace catfield
