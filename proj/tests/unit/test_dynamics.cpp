#include "common.hpp"

using namespace catfield;
using testsupport::Gen;

namespace {

Eigen::MatrixXcd permutation_matrix(const CovariantAction& action, Index g) {
  const auto n = static_cast<Eigen::Index>(action.category->object_count());
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index o = 0; o < n; ++o) p(action.object_action[g][o], o) = 1.0;
  return p;
}

std::map<std::string, std::vector<Complex>> by_observable(const Trajectory& traj) {
  std::map<std::string, std::vector<Complex>> out;
  for (const auto& r : traj.rows) out[r.observable].push_back(r.value);
  return out;
}

}  // namespace

TEST_CASE("rotation action validates and its functors compose") {
  for (std::size_t n : {2, 3, 5}) {
    const CovariantAction act = rotation_action(make_indiscrete(n));
    CHECK_NOTHROW(validate_action(act.category, act.group, act.object_action, act.u));
    const FinCategory& g = *act.group;
    for (Index x = 0; x < g.arrow_count(); ++x) {
      for (Index y = 0; y < g.arrow_count(); ++y) {
        CHECK(same_functor(act.functors[g.compose(y, x)], compose_functors(act.functors[y], act.functors[x])));
      }
      const Index xinv = *inverse_of(g, x);
      CHECK(same_functor(act.functors[xinv], *inverse_functor(act.functors[x])));
    }
  }
}

TEST_CASE("malformed and non-cocycle actions are rejected") {
  const CovariantAction act = rotation_action(make_indiscrete(3));
  auto u = act.u;
  u[1][0] = act.category->identity(0);
  CHECK_CODE(validate_action(act.category, act.group, act.object_action, u), "dynamics.MalformedAction");

  auto objects = act.object_action;
  objects.pop_back();
  CHECK_CODE(validate_action(act.category, act.group, objects, act.u), "dynamics.MalformedAction");

  // Z/2 acting trivially on the one object of Z/3 with u^(g1) = g1:
  // u^(g1 g1) = u^(g0) = g0, but u^(g1) ∘ u^(g1) = g2.
  const CategoryPtr z3 = make_cyclic_group(3);
  const CategoryPtr z2 = make_cyclic_group(2);
  const std::vector<std::vector<Index>> fixed{{0}, {0}};
  CHECK_CODE(validate_action(z3, z2, fixed, {{z3->arrow_index("g0")}, {z3->arrow_index("g1")}}),
             "dynamics.CocycleViolation");
  CHECK_CODE(validate_action(z3, z2, fixed, {{z3->arrow_index("g1")}, {z3->arrow_index("g0")}}),
             "dynamics.CocycleViolation");
  CHECK_NOTHROW(validate_action(z3, z2, fixed, {{z3->arrow_index("g0")}, {z3->arrow_index("g0")}}));

  const CategoryPtr chain = testsupport::chain(1);
  const std::vector<std::vector<Index>> swap{{0, 1}, {1, 0}};
  CHECK_CODE(validate_action(chain, z2, swap, {{0, 2}, {1, 1}}), "dynamics.MalformedAction");
}

TEST_CASE("inner automorphism equals permutation conjugation") {
  Gen gen(71);
  for (std::size_t n : {2, 3, 4, 6}) {
    const CovariantAction act = rotation_action(make_indiscrete(n));
    for (Index g = 0; g < act.group->arrow_count(); ++g) {
      const ComplexElement u = action_element(act, g);
      const Eigen::MatrixXcd p = permutation_matrix(act, g);
      CHECK(testsupport::max_abs(to_matrix(u) - p) == 0.0);
      for (int i = 0; i < 10; ++i) {
        const auto a = gen.element(act.category, ComplexRig{}, 1.0);
        const auto b = gen.element(act.category, ComplexRig{}, 1.0);
        const auto ia = inner_automorphism(u, a);
        CHECK(testsupport::max_abs(to_matrix(ia) - p * to_matrix(a) * p.adjoint()) <= 1e-9);
        CHECK(max_abs_diff(inner_automorphism(u, convolve(a, b)), convolve(ia, inner_automorphism(u, b))) <= 1e-9);
      }
      CHECK(max_abs_diff(inner_automorphism(u, unit(act.category, ComplexRig{})), unit(act.category, ComplexRig{})) <=
            1e-12);
    }
  }
}

TEST_CASE("inversion") {
  const CategoryPtr c = make_indiscrete(3);
  const auto eps = unit(c, ComplexRig{});
  CHECK(max_abs_diff(invert_element(eps), eps) <= 1e-12);
  CHECK_CODE(invert_element(ComplexElement(c, ComplexRig{})), "dynamics.NotInvertible");
  CHECK_CODE(invert_element(indeterminate(c, ComplexRig{}, "a1_1")), "dynamics.NotInvertible");
  CHECK_CODE(inner_automorphism(indeterminate(c, ComplexRig{}, "a2_1"), eps), "dynamics.NotInvertible");
  const auto u = scalar_left(Complex(2.0, 0.0), eps);
  CHECK(max_abs_diff(convolve(u, invert_element(u)), eps) <= 1e-12);
}

TEST_CASE("pullback along an inner automorphism is a state") {
  const CategoryPtr c = make_indiscrete(3);
  const auto inv = inverse_involution(c);
  std::vector<Complex> w(9);
  w[c->identity(0)] = 0.6;
  w[c->identity(1)] = 0.3;
  w[c->identity(2)] = 0.1;
  const State s = state_from_weights(inv, w);
  const CovariantAction act = rotation_action(c);
  for (Index g = 0; g < 3; ++g) {
    const State p = pullback_state(s, action_element(act, g));
    CHECK(std::abs(p.normalization() - Complex(1.0, 0.0)) < 1e-12);
    CHECK(p.min_block_eigenvalue() >= -1e-12);
  }
}

TEST_CASE("unitarity") {
  const CategoryPtr c = make_indiscrete(4);
  const auto inv = inverse_involution(c);
  const ComplexRig rig;
  CHECK(is_unitary(unit(c, rig), inv));
  ComplexElement shift(c, rig);
  for (int i = 1; i <= 4; ++i) shift.set("a" + std::to_string(i % 4 + 1) + "_" + std::to_string(i), 1.0);
  CHECK(is_unitary(shift, inv));
  CHECK_FALSE(is_unitary(scalar_left(Complex(2.0, 0.0), unit(c, rig)), inv));
  const CategoryPtr chain = testsupport::chain(1);
  CHECK_CODE(is_unitary(indeterminate(chain, rig, "e0"), trivial_involution(chain)),
             "dynamics.SupportOutsideCarrier");
}

TEST_CASE("coined walks") {
  CHECK_CODE(coined_walk(1, hadamard_coin()), "dynamics.BadSize");
  Eigen::Matrix2cd bad;
  bad << 1.0, 1.0, 0.0, 1.0;
  CHECK_CODE(coined_walk(4, bad), "dynamics.CoinNotUnitary");

  Gen gen(72);
  for (int i = 0; i < 10; ++i) {
    const double th = gen.uniform(0.0, 3.0);
    const Complex ph = std::polar(1.0, gen.uniform(0.0, 3.0));
    Eigen::Matrix2cd coin;
    coin << std::cos(th), ph * std::sin(th), -std::conj(ph) * std::sin(th), std::cos(th);
    const WalkConfig cfg = coined_walk(3 + gen.below(4), coin);
    CHECK(is_unitary(cfg.omega, cfg.involution));
  }
}

TEST_CASE("Hadamard walk on the 4-cycle after one step") {
  WalkConfig cfg = coined_walk(4, hadamard_coin());
  cfg.initial = coined_initial_state(cfg, 0, Eigen::Vector2cd(1.0, 0.0));
  cfg.horizon = 1;
  const auto obs = by_observable(walk_evolve(cfg));
  CHECK(std::abs(obs.at("site:1")[1] - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(obs.at("site:3")[1] - Complex(0.5, 0.0)) < 1e-12);
  CHECK(std::abs(obs.at("site:0")[1]) < 1e-12);
  CHECK(std::abs(obs.at("site:2")[1]) < 1e-12);
}

TEST_CASE("property: walks match the dense unitary oracle") {
  Gen gen(73);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + gen.below(7);
    const double th = gen.uniform(0.0, 3.0);
    Eigen::Matrix2cd coin;
    coin << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
    Eigen::Vector2cd v(gen.complex(), gen.complex());
    v.normalize();
    const std::size_t site = gen.below(n);
    const std::size_t steps = 6;
    CAPTURE(n);
    WalkConfig cfg = coined_walk(n, coin);
    cfg.initial = coined_initial_state(cfg, site, v);
    cfg.horizon = steps;
    const Trajectory traj = walk_evolve(cfg);
    const auto oracle = testsupport::DenseWalkOracle{n, coin}.run(site, v, steps);
    const auto obs = by_observable(traj);
    for (std::size_t t = 0; t <= steps; ++t) {
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(obs.at("site:" + std::to_string(i))[t] - Complex(oracle[t][i], 0.0)) <= 1e-9);
      }
      CHECK(std::abs(obs.at("chirality:0")[t] - Complex(oracle[t][n], 0.0)) <= 1e-9);
      CHECK(std::abs(obs.at("chirality:1")[t] - Complex(oracle[t][n + 1], 0.0)) <= 1e-9);
      CHECK(std::abs(traj.unit_value[t] - Complex(1.0, 0.0)) <= 1e-12);
      CHECK(traj.min_eigenvalue[t] >= -1e-9);
    }
  }
}

TEST_CASE("identity coin moves a point mass") {
  WalkConfig cfg = coined_walk(5, Eigen::Matrix2cd::Identity());
  cfg.initial = coined_initial_state(cfg, 2, Eigen::Vector2cd(1.0, 0.0));
  cfg.horizon = 7;
  const auto obs = by_observable(walk_evolve(cfg));
  for (std::size_t t = 0; t <= 7; ++t) {
    CHECK(std::abs(obs.at("site:" + std::to_string((2 + t) % 5))[t] - Complex(1.0, 0.0)) < 1e-12);
  }
}

TEST_CASE("trivial evolution and walk errors") {
  WalkConfig cfg = coined_walk(3, hadamard_coin());
  CHECK_CODE(walk_evolve(cfg), "dynamics.StateInvalid");
  cfg.initial = coined_initial_state(cfg, 1, Eigen::Vector2cd(0.6, 0.8));
  cfg.horizon = 4;
  WalkConfig still = cfg;
  still.omega = unit(cfg.omega.category(), cfg.omega.rig());
  const auto obs = by_observable(walk_evolve(still));
  for (const auto& [id, values] : obs) {
    for (const auto& v : values) CHECK(std::abs(v - values[0]) < 1e-12);
  }
  WalkConfig doubled = cfg;
  doubled.omega = scalar_left(SmallMatrix(2.0 * cfg.omega.rig().one()), cfg.omega);
  CHECK_CODE(walk_evolve(doubled), "dynamics.NotUnitary");
  CHECK_CODE(coined_initial_state(cfg, 7, Eigen::Vector2cd(1.0, 0.0)), "dynamics.BadSize");
}
