#include "catfield/rig.hpp"

#include <Eigen/Eigenvalues>
#include <cctype>

namespace catfield {

bool MatrixRig::is_positive(const value_type& a) const {
  const double scale = std::max(1.0, norm(a));
  if (norm(a - a.adjoint()) > tolerance * scale) return false;
  const Eigen::MatrixXcd h = (a + a.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() >= -tolerance * scale;
}

RigSpec rig_instance(std::string_view raw) {
  std::string name;
  for (char ch : raw) name.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  RigSpec spec;
  spec.name = name;
  if (name == "complex") {
    spec.kind = RigKind::Complex;
    spec.has_involution = true;
    spec.involution_variance = Variance::Contravariant;
    spec.has_positivity = true;
    spec.tolerance = kDefaultTolerance;
    return spec;
  }
  if (name == "boolean") {
    spec.kind = RigKind::Boolean;
    spec.has_involution = true;
    spec.involution_variance = Variance::Contravariant;
    return spec;
  }
  if (name == "natural") {
    spec.kind = RigKind::Natural;
    return spec;
  }
  if (name == "tropical") {
    spec.kind = RigKind::Tropical;
    return spec;
  }
  if (name.rfind("matrix", 0) == 0) {
    std::string rest = name.substr(6);
    while (!rest.empty() && (rest.front() == ' ' || rest.front() == ':' || rest.front() == '_')) {
      rest.erase(rest.begin());
    }
    int n = 0;
    bool digits = !rest.empty();
    for (char ch : rest) {
      if (!std::isdigit(static_cast<unsigned char>(ch)) || n > 1000) {
        digits = false;
        break;
      }
      n = n * 10 + (ch - '0');
    }
    if (!digits) fail("rig.BadDimension", "cannot read a dimension from '" + std::string(raw) + "'");
    MatrixRig check(n);  // throws rig.BadDimension
    spec.kind = RigKind::Matrix;
    spec.dimension = n;
    spec.name = check.name();
    spec.commutative = n == 1;
    spec.has_involution = true;
    spec.involution_variance = Variance::Contravariant;
    spec.has_positivity = true;
    spec.tolerance = kDefaultTolerance;
    return spec;
  }
  fail("rig.UnknownRig", "unknown rig '" + std::string(raw) + "'");
}

AnyRig make_rig(const RigSpec& spec) {
  switch (spec.kind) {
    case RigKind::Complex:
      return ComplexRig{};
    case RigKind::Boolean:
      return BooleanRig{};
    case RigKind::Natural:
      return NaturalRig{};
    case RigKind::Tropical:
      return TropicalRig{};
    case RigKind::Matrix:
      return MatrixRig(spec.dimension);
  }
  fail("rig.UnknownRig", "unhandled rig kind");
}

}  // namespace catfield
