#include "common.hpp"

using namespace catfield;

TEST_CASE("sampled rig axioms hold for every instance") {
  CHECK(check_rig_axioms(ComplexRig{}, 500, 1).ok());
  CHECK(check_rig_axioms(BooleanRig{}, 500, 2).ok());
  CHECK(check_rig_axioms(NaturalRig{}, 500, 3).ok());
  CHECK(check_rig_axioms(TropicalRig{}, 500, 4).ok());
  for (int n = 1; n <= kMaxMatrixRigDim; ++n) {
    CAPTURE(n);
    const auto report = check_rig_axioms(MatrixRig(n), 300, 5 + n);
    CHECK_MESSAGE(report.ok(), report.first_failure);
  }
}

TEST_CASE("a deliberately broken rig is caught") {
  struct Broken : NaturalRig {
    value_type add(value_type a, value_type b) const { return a + b + 1; }
  };
  const auto report = check_rig_axioms(Broken{}, 50, 9);
  CHECK_FALSE(report.ok());
}

TEST_CASE("tropical arithmetic") {
  const TropicalRig t;
  CHECK(t.add(3.0, -2.0) == -2.0);
  CHECK(t.mul(3.0, -2.0) == 1.0);
  CHECK(t.mul(t.zero(), 5.0) == t.zero());
  CHECK(t.add(t.zero(), 5.0) == 5.0);
}

TEST_CASE("matrix rig involution and positivity") {
  const MatrixRig m(2);
  SmallMatrix a(2, 2);
  a << Complex(1, 2), Complex(0, 1), Complex(3, 0), Complex(-1, -1);
  CHECK(m.equal(m.involute(m.involute(a)), a));
  CHECK(m.is_positive(m.mul(m.involute(a), a)));
  SmallMatrix neg = m.one();
  neg(1, 1) = -1.0;
  CHECK_FALSE(m.is_positive(neg));
  CHECK(positivity_cancellation_holds(m, {m.zero(), m.one(), neg, m.mul(m.involute(a), a)}));
}

TEST_CASE("complex positivity and cancellation") {
  const ComplexRig c;
  CHECK(c.is_positive({2.0, 0.0}));
  CHECK_FALSE(c.is_positive({-1.0, 0.0}));
  CHECK_FALSE(c.is_positive({1.0, 1.0}));
  CHECK(positivity_cancellation_holds(c, {{0, 0}, {1, 0}, {-1, 0}, {0.5, 0}}));
}

TEST_CASE("center membership") {
  const MatrixRig m(2);
  CHECK(center_membership(SmallMatrix(m.one() * Complex(3, 1)), m, 20));
  SmallMatrix e11 = m.zero();
  e11(0, 0) = 1.0;
  CHECK_FALSE(center_membership(e11, m, 0));
  CHECK(center_membership(Complex(2, 2), ComplexRig{}, 0));
}

TEST_CASE("runtime rig selection") {
  CHECK(rig_instance("complex").has_positivity);
  CHECK(rig_instance("boolean").kind == RigKind::Boolean);
  CHECK_FALSE(rig_instance("natural").has_involution);
  CHECK_FALSE(rig_instance("tropical").has_positivity);
  const RigSpec m = rig_instance("matrix 3");
  CHECK(m.kind == RigKind::Matrix);
  CHECK(m.dimension == 3);
  CHECK_FALSE(m.commutative);
  CHECK(rig_instance("matrix:2").dimension == 2);
  CHECK(rig_instance("matrix4").dimension == 4);
  CHECK_CODE(rig_instance("quaternion"), "rig.UnknownRig");
  CHECK_CODE(rig_instance("matrix 9"), "rig.BadDimension");
  CHECK(std::holds_alternative<MatrixRig>(make_rig(m)));
  CHECK(std::get<MatrixRig>(make_rig(m)).dim == 3);
}
