#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catfield/algebra.hpp"
#include "catfield/causal.hpp"
#include "catfield/category.hpp"
#include "catfield/rig.hpp"

namespace catfield {

/// Per-arrow weight of a state: a d x d density block (d = 1 over the complex
/// rig, d = n over "matrix n"). The functional is phi(a) = sum_c tr(D(c) a(c)).
using StateWeight = Eigen::MatrixXcd;

struct BlockCertificate {
  Index object = kNone;
  double min_eigenvalue = 0.0;
  double norm = 0.0;
};

class State {
 public:
  const CategoryPtr& category() const { return inv_.category(); }
  const InvolutionStructure& involution() const { return inv_; }
  int dimension() const { return dim_; }
  const RigSpec& rig() const { return rig_; }
  double tolerance() const { return tol_; }
  const StateWeight& weight(Index arrow) const { return weights_.at(arrow); }
  const std::vector<StateWeight>& weights() const { return weights_; }
  /// Scalar weight; only meaningful for dimension 1.
  Complex scalar(Index arrow) const { return weights_.at(arrow)(0, 0); }
  const std::vector<BlockCertificate>& certificates() const { return certs_; }
  Complex normalization() const { return normalization_; }
  /// Some Gram block had a slightly negative eigenvalue within tolerance.
  bool borderline() const { return borderline_; }
  double min_block_eigenvalue() const;

 private:
  friend State state_from_weights(const InvolutionStructure&, const RigSpec&, std::vector<StateWeight>, double);
  explicit State(InvolutionStructure inv) : inv_(std::move(inv)) {}
  InvolutionStructure inv_;
  RigSpec rig_;
  int dim_ = 1;
  double tol_ = kDefaultTolerance;
  std::vector<StateWeight> weights_;
  std::vector<BlockCertificate> certs_;
  Complex normalization_{0.0, 0.0};
  bool borderline_ = false;
};

/// Validates normalization, hermitian symmetry and block positivity.
/// `weights` has one d x d block per ambient arrow (zero off the carrier).
/// Throws states.{NotNormalized, HermitianViolation, NotPSD, SupportOffCarrier,
/// UnsupportedRig, UnsupportedInvolution, MismatchedCategory}.
State state_from_weights(const InvolutionStructure& inv, const RigSpec& rig, std::vector<StateWeight> weights,
                         double tol = kDefaultTolerance);
/// Complex rig convenience.
State state_from_weights(const InvolutionStructure& inv, const std::vector<Complex>& weights,
                         double tol = kDefaultTolerance);

/// K[(c',k),(c,l)] = D(c'† ∘ c)_{lk} over carrier arrows c, c' with codomain `object`.
Eigen::MatrixXcd gram_block(const InvolutionStructure& inv, const std::vector<StateWeight>& weights, int dim,
                            Index object, std::vector<Index>* labels = nullptr);

/// Throws states.MismatchedCategory / states.MismatchedRig.
Complex evaluate(const State& s, const ComplexElement& a);
Complex evaluate(const State& s, const AlgElement<MatrixRig>& a);

struct ProbeReport {
  std::size_t trials = 0;
  double min_real = 0.0;       // min of phi(a* a) over unit-norm a
  double max_imag = 0.0;       // max |Im phi(a* a)|
  double scale = 0.0;          // largest |phi(a* a)| seen, for the tolerance
  std::vector<Complex> witness;  // coefficients of the minimizing a
  std::vector<std::string> witness_labels;
  bool violation(double tol) const { return min_real < -tol * (1.0 + scale) || max_imag > tol * (1.0 + scale); }
};

/// Random unit-norm elements on the carrier, then shifted power iteration on
/// the form a -> phi(a* a). Everything goes through involute / convolve /
/// evaluate; the Gram blocks are never consulted.
ProbeReport positivity_probe(const State& s, std::size_t trials, std::uint64_t seed, std::size_t refine_steps = 200);

/// A linear functional on the whole algebra whose carrier restriction is a
/// state.
struct FieldState {
  State carrier_state;
  std::vector<StateWeight> weights;  // every ambient arrow
};
/// Throws states.CarrierRestrictionInvalid wrapping the underlying code.
FieldState field_state(const CausalCategory& cc, const RigSpec& rig, std::vector<StateWeight> weights,
                       double tol = kDefaultTolerance);
Complex evaluate(const FieldState& s, const ComplexElement& a);

/// State on R[O^{rel∼}], as its own category with the restricted involution.
/// `weights` are indexed by ambient arrow. Throws states.NotARegion,
/// states.SupportOffCarrier and the state_from_weights errors.
State local_state(const CausalCategory& cc, const std::vector<bool>& objects, const RigSpec& rig,
                  const std::vector<StateWeight>& weights, double tol = kDefaultTolerance);

/// Subcategory generated by the support of the weights.
CategoryPtr support_subcategory(const State& s);

/// Vector state of the block matrix algebra of an indiscrete category:
/// D(j -> i) = v_j v_i^H for the d-vectors v_i (one per object).
State vector_state(const InvolutionStructure& inv, const RigSpec& rig, const std::vector<Eigen::VectorXcd>& v,
                   double tol = kDefaultTolerance);

/// Runtime rig to per-arrow block dimension; throws states.UnsupportedRig.
int state_dimension(const RigSpec& rig);

}  // namespace catfield
