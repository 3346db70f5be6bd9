#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "catfield/algebra.hpp"
#include "catfield/category.hpp"
#include "catfield/states.hpp"

namespace catfield {

// --- covariance ---------------------------------------------------------------------

struct CovariantAction {
  CategoryPtr group;     // one object; arrows are the group elements
  CategoryPtr category;
  std::vector<std::vector<Index>> object_action;  // [g][C] -> gC
  std::vector<std::vector<Index>> u;              // [g][C] -> arrow C -> gC
  std::vector<FunctorMap> functors;               // ũ^g
};

/// Checks the object action, the cocycle law and unit law for u, invertibility
/// of every component, and that each ũ^g(c) = u^(g,cod c) ∘ c ∘ (u^(g,dom c))^-1
/// is an invertible functor with ũ^{g'g} = ũ^{g'} ∘ ũ^g. Throws
/// dynamics.{MalformedAction, CocycleViolation, NotInvertibleComponent, NotAFunctor}.
CovariantAction validate_action(const CategoryPtr& cat, const CategoryPtr& group,
                                std::vector<std::vector<Index>> object_action, std::vector<std::vector<Index>> u);

/// Z/n acting on an indiscrete category with n objects by rotating the object
/// order; u^(g,C) is the unique arrow C -> gC.
CovariantAction rotation_action(const CategoryPtr& indiscrete);

/// ι^u = sum over C of ι^{u^(g,C)}.
ComplexElement action_element(const CovariantAction& action, Index g);

/// Two-sided inverse by a linear solve on the left-multiplication matrix.
/// Throws dynamics.NotInvertible.
ComplexElement invert_element(const ComplexElement& u, double tol = kDefaultTolerance);

/// u a u^-1. Throws dynamics.NotInvertible.
ComplexElement inner_automorphism(const ComplexElement& u, const ComplexElement& a);

template <Rig R>
AlgElement<R> inner_automorphism(const AlgElement<R>& u, const AlgElement<R>& u_inverse, const AlgElement<R>& a) {
  return convolve(convolve(u, a), u_inverse);
}

/// Pulls a state back along a -> u a u^-1; the result is revalidated.
State pullback_state(const State& s, const ComplexElement& u);

// --- quantum walks --------------------------------------------------------------------

/// ω* ω = ω ω* = ε within tolerance. Throws dynamics.SupportOutsideCarrier.
template <InvolutiveRig R>
bool is_unitary(const AlgElement<R>& omega, const InvolutionStructure& inv) {
  AlgElement<R> star = [&] {
    try {
      return involute_element(omega, inv);
    } catch (const Error& e) {
      if (e.code() == "algebra.SupportOutsideCarrier") fail("dynamics.SupportOutsideCarrier", e.what());
      throw;
    }
  }();
  const AlgElement<R> eps = unit(omega.category(), omega.rig());
  return approx_equal(convolve(star, omega), eps) && approx_equal(convolve(omega, star), eps);
}

struct Observable {
  std::string id;
  AlgElement<MatrixRig> element;
};

/// Walks run over the matrix rig; "matrix 1" stands in for the complex numbers.
struct WalkConfig {
  InvolutionStructure involution;
  AlgElement<MatrixRig> omega;
  std::optional<State> initial;
  std::size_t horizon = 0;
  std::vector<Observable> observables;
};

struct TrajectoryRow {
  std::size_t t = 0;
  std::string observable;
  Complex value;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  std::vector<Complex> unit_value;    // phi^t(ε) per step
  std::vector<double> min_eigenvalue; // smallest Gram eigenvalue of phi^t per step
  std::optional<State> final_state;
};

/// phi^t(c) blocks from phi((ω*)^t ι^c E_kl ω^t); every phi^t is revalidated.
/// Throws dynamics.{NotUnitary, StateInvalid, EvolvedStateInvalid}.
Trajectory walk_evolve(const WalkConfig& cfg);

inline constexpr double kCoinTolerance = 1e-9;

/// Indiscrete category on sites "0".."n-1" (arrow "i->j"), reversal dagger,
/// ω = sum_i P C on i -> i+1 and Q C on i -> i-1 (mod n) with P = E11, Q = E22.
/// Observables "site:i" and "chirality:0", "chirality:1". Throws
/// dynamics.{CoinNotUnitary, BadSize}.
WalkConfig coined_walk(std::size_t n, const Eigen::Matrix2cd& coin);

/// Vector state concentrated on one site with the given coin vector.
State coined_initial_state(const WalkConfig& cfg, std::size_t site, const Eigen::Vector2cd& coin_state);

Eigen::Matrix2cd hadamard_coin();

}  // namespace catfield
