#include "common.hpp"

using namespace catfield;
using testsupport::Gen;

namespace {

State trace_state(std::size_t n) {
  const CategoryPtr c = make_indiscrete(n);
  std::vector<Complex> w(c->arrow_count());
  for (Index o = 0; o < n; ++o) w[c->identity(o)] = 1.0 / static_cast<double>(n);
  return state_from_weights(inverse_involution(c), w);
}

/// Z/3 state whose Gram (circulant) spectrum is exactly `lambda`.
State z3_state(const std::array<double, 3>& lambda) {
  const CategoryPtr z3 = make_cyclic_group(3);
  const double pi = std::acos(-1.0);
  std::vector<Complex> w(3);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) w[j] += lambda[k] * std::polar(1.0, -2.0 * pi * j * k / 3.0) / 3.0;
  }
  return state_from_weights(inverse_involution(z3), w);
}

}  // namespace

TEST_CASE("vector state on indiscrete 2 has a two-dimensional GNS space") {
  const CategoryPtr c = make_indiscrete(2);
  const auto inv = inverse_involution(c);
  std::vector<Eigen::VectorXcd> v(2, Eigen::VectorXcd::Constant(1, 1.0 / std::sqrt(2.0)));
  const GnsSpace g = gns_construct(vector_state(inv, rig_instance("complex"), v));
  CHECK(g.dimension == 2);
  CHECK(std::abs(g.vacuum.norm() - 1.0) < 1e-12);
}

TEST_CASE("trace state gives the faithful regular representation of M2") {
  const State s = trace_state(2);
  const GnsSpace g = gns_construct(s);
  REQUIRE(g.dimension == 4);
  Eigen::MatrixXcd stacked(16, 4);
  for (Index c = 0; c < 4; ++c) stacked.col(c) = g.rep[c].reshaped();
  CHECK(Eigen::FullPivLU<Eigen::MatrixXcd>(stacked).rank() == 4);

  Gen gen(61);
  const auto inv = s.involution();
  for (int i = 0; i < 50; ++i) {
    const auto a = gen.element(s.category(), ComplexRig{}, 1.0);
    const auto b = gen.element(s.category(), ComplexRig{}, 1.0);
    CHECK(testsupport::max_abs(g.represent(convolve(a, b)) - g.represent(a) * g.represent(b)) <= 1e-8);
    CHECK(testsupport::max_abs(g.represent(involute_element(a, inv)) - g.represent(a).adjoint()) <= 1e-8);
    CHECK(std::abs(g.vacuum.dot(g.represent(a) * g.vacuum) - evaluate(s, a)) <= 1e-8);
    CHECK(testsupport::max_abs(g.represent(a) * g.vacuum - g.vector(a)) <= 1e-8);
  }
}

TEST_CASE("property: vacuum expectation reproduces random states") {
  Gen gen(62);
  for (std::size_t n : {1, 2, 3}) {
    const CategoryPtr c = make_indiscrete(n);
    const auto inv = inverse_involution(c);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Eigen::VectorXcd> v(n, Eigen::VectorXcd(1));
      double norm = 0.0;
      for (auto& x : v) {
        x(0) = gen.complex();
        norm += x.squaredNorm();
      }
      for (auto& x : v) x /= std::sqrt(norm);
      const State s = vector_state(inv, rig_instance("complex"), v);
      const GnsSpace g = gns_construct(s);
      CHECK(g.dimension == n);
      for (int i = 0; i < 20; ++i) {
        const auto a = gen.element(c, ComplexRig{});
        CHECK(std::abs(g.vacuum.dot(g.represent(a) * g.vacuum) - evaluate(s, a)) <= 1e-8);
      }
    }
  }
  const GnsSpace regular = gns_construct(z3_state({1.0, 1.0, 1.0}));
  CHECK(regular.dimension == 3);
}

TEST_CASE("GNS error paths") {
  const auto cc = minkowski_lattice(2, 2, LatticeFlavor::Thin);
  std::vector<Complex> w(cc.cat().arrow_count());
  w[cc.cat().identity(0)] = 1.0;
  const State thin = state_from_weights(*cc.involution(), w);
  CHECK_CODE(gns_construct(thin), "gns.CarrierNotWholeCategory");

  const CategoryPtr c = make_indiscrete(2);
  std::vector<Eigen::VectorXcd> v(2, Eigen::VectorXcd::Constant(2, 0.5));
  const State m = vector_state(inverse_involution(c), rig_instance("matrix 2"), v);
  CHECK_CODE(gns_construct(m), "gns.UnsupportedRig");

  CHECK_CODE(gns_construct(z3_state({3.0 - 6e-9, 5e-9, 1e-9})), "gns.DegenerateTolerance");
  CHECK(gns_construct(z3_state({3.0 - 1e-3, 1e-3, 0.0})).dimension == 2);
}

TEST_CASE("contractivity on trace states and identities") {
  for (std::size_t n : {2, 3, 4}) {
    const State s = trace_state(n);
    for (Index c = 0; c < s.category()->arrow_count(); ++c) {
      const auto r = contractivity_check(s, c);
      CHECK(r.holds);
      CHECK(std::abs(r.operator_bound - 1.0) <= 1e-9);
    }
  }
  Gen gen(63);
  const CategoryPtr c = make_indiscrete(3);
  std::vector<Eigen::VectorXcd> v(3, Eigen::VectorXcd(1));
  for (auto& x : v) x(0) = gen.complex();
  double norm = 0.0;
  for (auto& x : v) norm += x.squaredNorm();
  for (auto& x : v) x /= std::sqrt(norm);
  const State s = vector_state(inverse_involution(c), rig_instance("complex"), v);
  for (Index o = 0; o < 3; ++o) CHECK(contractivity_check(s, c->identity(o)).operator_bound == 1.0);
}

TEST_CASE("unbalanced Gram blocks make the induced map fail") {
  // One arrow in each module; the target form is four times the source form.
  const Eigen::MatrixXcd g_dom = Eigen::MatrixXcd::Constant(1, 1, 0.25);
  const Eigen::MatrixXcd g_cod = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  const Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  const auto r = contractivity_from_blocks(g_dom, g_cod, m);
  CHECK_FALSE(r.holds);
  CHECK(r.operator_bound == doctest::Approx(4.0));
  CHECK_CODE(induced_map_from_blocks(g_dom, g_cod, m), "gns.ContractivityFails");

  Eigen::MatrixXcd null_dom = Eigen::MatrixXcd::Zero(1, 1);
  const auto n = contractivity_from_blocks(null_dom, g_cod, m);
  CHECK_FALSE(n.null_implication);
}

TEST_CASE("unbalanced diagonal state on indiscrete 2 stays contractive") {
  const CategoryPtr c = make_indiscrete(2);
  std::vector<Complex> w(4);
  w[c->identity(0)] = 2.0 / 3.0;
  w[c->identity(1)] = 1.0 / 3.0;
  const State s = state_from_weights(inverse_involution(c), w);
  for (Index a = 0; a < 4; ++a) {
    const auto r = contractivity_check(s, a);
    CHECK(r.holds);
    CHECK(r.operator_bound == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("induced maps are functorial") {
  Gen gen(64);
  const CategoryPtr c = make_indiscrete(3);
  const auto inv = inverse_involution(c);
  std::vector<Complex> w(9);
  w[c->identity(0)] = 0.5;
  w[c->identity(1)] = 0.3;
  w[c->identity(2)] = 0.2;
  w[c->arrow_index("a2_1")] = Complex(0.1, 0.05);
  w[c->arrow_index("a1_2")] = Complex(0.1, -0.05);
  const State s = state_from_weights(inv, w);
  for (Index g = 0; g < 9; ++g) {
    for (Index f = 0; f < 9; ++f) {
      const Index gf = c->compose(g, f);
      if (gf == kNone) continue;
      const Eigen::MatrixXcd lhs = hilbert_functor_map(s, gf);
      const Eigen::MatrixXcd rhs = hilbert_functor_map(s, g) * hilbert_functor_map(s, f);
      CHECK(testsupport::max_abs(lhs - rhs) <= 1e-8);
    }
  }
  for (Index o = 0; o < 3; ++o) {
    const Eigen::MatrixXcd id = hilbert_functor_map(s, c->identity(o));
    CHECK(testsupport::max_abs(id - Eigen::MatrixXcd::Identity(id.rows(), id.cols())) <= 1e-12);
  }
}

TEST_CASE("module maps are left multiplication") {
  const CategoryPtr c = make_indiscrete(3);
  const Index a = c->arrow_index("a2_1");
  const ObjectModuleMap m = module_map(*c, a);
  CHECK(m.source_arrows.size() == 3);
  CHECK(m.target_arrows.size() == 3);
  for (Eigen::Index j = 0; j < m.matrix.cols(); ++j) {
    const Index product = c->compose(a, m.source_arrows[j]);
    for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) {
      CHECK(m.matrix(i, j) == Complex(m.target_arrows[i] == product ? 1.0 : 0.0, 0.0));
    }
  }
  CHECK_CODE(module_map(*c, 99), "gns.UnknownArrow");
}
