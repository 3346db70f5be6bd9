#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "catfield/category.hpp"
#include "catfield/error.hpp"

namespace catfield {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kAbsoluteFloor = 1e-12;
inline constexpr int kMaxMatrixRigDim = 4;

/// Matrix rig values live on the stack up to kMaxMatrixRigDim.
using SmallMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                                  kMaxMatrixRigDim, kMaxMatrixRigDim>;

/// |a - b| <= max(floor, rel * max(|a|, |b|)).
inline bool close(double a_minus_b, double scale, double rel = kDefaultTolerance,
                  double floor = kAbsoluteFloor) {
  return std::abs(a_minus_b) <= std::max(floor, rel * scale);
}
inline bool close(Complex a, Complex b, double rel = kDefaultTolerance, double floor = kAbsoluteFloor) {
  return close(std::abs(a - b), std::max(std::abs(a), std::abs(b)), rel, floor);
}

// --- the rig contract -----------------------------------------------------------

template <class R>
concept Rig = requires(const R& r, const typename R::value_type& a, std::mt19937_64& gen) {
  typename R::value_type;
  { R::commutative } -> std::convertible_to<bool>;
  { r.name() } -> std::convertible_to<std::string>;
  { r.zero() } -> std::convertible_to<typename R::value_type>;
  { r.one() } -> std::convertible_to<typename R::value_type>;
  { r.add(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.mul(a, a) } -> std::convertible_to<typename R::value_type>;
  { r.equal(a, a) } -> std::convertible_to<bool>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.canonical(a) } -> std::convertible_to<typename R::value_type>;
  { r.sample(gen) } -> std::convertible_to<typename R::value_type>;
};

template <class R>
concept InvolutiveRig = Rig<R> && requires(const R& r, const typename R::value_type& a) {
  { r.involute(a) } -> std::convertible_to<typename R::value_type>;
  { R::involution_variance } -> std::convertible_to<Variance>;
};

template <class R>
concept PositiveRig = InvolutiveRig<R> && requires(const R& r, const typename R::value_type& a) {
  { r.is_positive(a) } -> std::convertible_to<bool>;
};

/// Rigs that can list a spanning set (used for exact center tests).
template <class R>
concept EnumerableRig = Rig<R> && requires(const R& r) {
  { r.basis() } -> std::convertible_to<std::vector<typename R::value_type>>;
};

// --- instances --------------------------------------------------------------------

struct ComplexRig {
  using value_type = Complex;
  static constexpr bool commutative = true;
  static constexpr bool exact = false;
  static constexpr Variance involution_variance = Variance::Contravariant;
  double tolerance = kDefaultTolerance;

  std::string name() const { return "complex"; }
  value_type zero() const { return {0.0, 0.0}; }
  value_type one() const { return {1.0, 0.0}; }
  value_type add(value_type a, value_type b) const { return a + b; }
  value_type mul(value_type a, value_type b) const {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
  }
  bool equal(value_type a, value_type b) const { return close(a, b, tolerance); }
  bool is_zero(value_type a) const { return std::abs(a) <= kAbsoluteFloor; }
  value_type canonical(value_type a) const { return is_zero(a) ? zero() : a; }
  value_type involute(value_type a) const { return std::conj(a); }
  bool is_positive(value_type a) const {
    const double scale = std::max(1.0, std::abs(a));
    return std::abs(a.imag()) <= tolerance * scale && a.real() >= -tolerance * scale;
  }
  value_type sample(std::mt19937_64& gen) const {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(gen);
    const double im = u(gen);
    return {re, im};
  }
};

struct BooleanRig {
  using value_type = bool;
  static constexpr bool commutative = true;
  static constexpr bool exact = true;
  static constexpr Variance involution_variance = Variance::Contravariant;

  std::string name() const { return "boolean"; }
  value_type zero() const { return false; }
  value_type one() const { return true; }
  value_type add(value_type a, value_type b) const { return a || b; }
  value_type mul(value_type a, value_type b) const { return a && b; }
  bool equal(value_type a, value_type b) const { return a == b; }
  bool is_zero(value_type a) const { return !a; }
  value_type canonical(value_type a) const { return a; }
  value_type involute(value_type a) const { return a; }
  value_type sample(std::mt19937_64& gen) const { return (gen() & 1U) != 0; }
};

struct NaturalRig {
  using value_type = std::uint64_t;
  static constexpr bool commutative = true;
  static constexpr bool exact = true;

  std::string name() const { return "natural"; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return a + b; }
  value_type mul(value_type a, value_type b) const { return a * b; }
  bool equal(value_type a, value_type b) const { return a == b; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type canonical(value_type a) const { return a; }
  value_type sample(std::mt19937_64& gen) const { return gen() % 10; }
};

/// Min-plus: addition is min (unit +inf), multiplication is + (unit 0).
struct TropicalRig {
  using value_type = double;
  static constexpr bool commutative = true;
  static constexpr bool exact = true;

  std::string name() const { return "tropical"; }
  value_type zero() const { return std::numeric_limits<double>::infinity(); }
  value_type one() const { return 0.0; }
  value_type add(value_type a, value_type b) const { return std::min(a, b); }
  value_type mul(value_type a, value_type b) const { return a + b; }
  bool equal(value_type a, value_type b) const { return a == b; }
  bool is_zero(value_type a) const { return a == zero(); }
  value_type canonical(value_type a) const { return a; }
  /// Integers in [-20, 20] (exact under +), occasionally the zero.
  value_type sample(std::mt19937_64& gen) const {
    if (gen() % 8 == 0) return zero();
    return static_cast<double>(static_cast<int>(gen() % 41) - 20);
  }
};

/// n x n complex matrices; involution = conjugate transpose, R+ = PSD.
struct MatrixRig {
  using value_type = SmallMatrix;
  static constexpr bool commutative = false;
  static constexpr bool exact = false;
  static constexpr Variance involution_variance = Variance::Contravariant;
  int dim = 2;
  double tolerance = kDefaultTolerance;

  explicit MatrixRig(int n = 2) : dim(n) {
    if (n < 1 || n > kMaxMatrixRigDim) {
      fail("rig.BadDimension", "matrix rig dimension must be in [1, " +
                                   std::to_string(kMaxMatrixRigDim) + "], got " + std::to_string(n));
    }
  }

  std::string name() const { return "matrix " + std::to_string(dim); }
  value_type zero() const { return value_type::Zero(dim, dim); }
  value_type one() const { return value_type::Identity(dim, dim); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  static double norm(const value_type& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  }
  bool equal(const value_type& a, const value_type& b) const {
    return close(norm(a - b), std::max(norm(a), norm(b)), tolerance);
  }
  bool is_zero(const value_type& a) const { return norm(a) <= kAbsoluteFloor; }
  value_type canonical(const value_type& a) const { return is_zero(a) ? zero() : a; }
  value_type involute(const value_type& a) const { return a.adjoint(); }
  bool is_positive(const value_type& a) const;
  value_type sample(std::mt19937_64& gen) const {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    value_type m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        const double re = u(gen);
        const double im = u(gen);
        m(i, j) = Complex(re, im);
      }
    }
    return m;
  }
  /// Matrix units E_kl.
  std::vector<value_type> basis() const {
    std::vector<value_type> out;
    for (int k = 0; k < dim; ++k) {
      for (int l = 0; l < dim; ++l) {
        value_type e = zero();
        e(k, l) = 1.0;
        out.push_back(e);
      }
    }
    return out;
  }
};

template <Rig R>
bool same_rig(const R& a, const R& b) {
  return a.name() == b.name();
}

// --- runtime selection ----------------------------------------------------------------

enum class RigKind { Complex, Boolean, Natural, Tropical, Matrix };

/// Runtime description of a rig instance.
struct RigSpec {
  RigKind kind = RigKind::Complex;
  int dimension = 1;
  std::string name;
  bool commutative = true;
  bool has_involution = false;
  std::optional<Variance> involution_variance;
  bool has_positivity = false;
  double tolerance = 0.0;  // 0 for exact rigs
};

/// "complex", "boolean", "natural", "tropical", "matrix N" ("matrix:N" and
/// "matrixN" also accepted). Throws rig.UnknownRig / rig.BadDimension.
RigSpec rig_instance(std::string_view name);

using AnyRig = std::variant<ComplexRig, BooleanRig, NaturalRig, TropicalRig, MatrixRig>;
AnyRig make_rig(const RigSpec& spec);

// --- sampled axiom checks ----------------------------------------------------------------

struct RigAxiomReport {
  std::size_t samples = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0; }
};

template <Rig R>
RigAxiomReport check_rig_axioms(const R& rig, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  RigAxiomReport report;
  auto check = [&](bool ok, const char* law) {
    if (!ok) {
      if (report.failures == 0) report.first_failure = law;
      ++report.failures;
    }
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const auto a = rig.sample(gen);
    const auto b = rig.sample(gen);
    const auto c = rig.sample(gen);
    ++report.samples;
    check(rig.equal(rig.add(a, b), rig.add(b, a)), "additive commutativity");
    check(rig.equal(rig.add(rig.add(a, b), c), rig.add(a, rig.add(b, c))), "additive associativity");
    check(rig.equal(rig.add(a, rig.zero()), a), "additive unit");
    check(rig.equal(rig.mul(rig.mul(a, b), c), rig.mul(a, rig.mul(b, c))), "multiplicative associativity");
    check(rig.equal(rig.mul(a, rig.one()), a) && rig.equal(rig.mul(rig.one(), a), a), "multiplicative unit");
    check(rig.equal(rig.mul(c, rig.add(b, a)), rig.add(rig.mul(c, b), rig.mul(c, a))), "left distributivity");
    check(rig.equal(rig.mul(rig.add(c, b), a), rig.add(rig.mul(c, a), rig.mul(b, a))), "right distributivity");
    check(rig.equal(rig.mul(rig.zero(), a), rig.zero()) && rig.equal(rig.mul(a, rig.zero()), rig.zero()),
          "absorption");
    if constexpr (R::commutative) check(rig.equal(rig.mul(a, b), rig.mul(b, a)), "declared commutativity");
    if constexpr (InvolutiveRig<R>) {
      check(rig.equal(rig.involute(rig.involute(a)), a), "involution squared is identity");
      check(rig.equal(rig.involute(rig.add(a, b)), rig.add(rig.involute(a), rig.involute(b))),
            "involution preserves addition");
      const auto ab = rig.involute(rig.mul(a, b));
      if constexpr (R::involution_variance == Variance::Contravariant) {
        check(rig.equal(ab, rig.mul(rig.involute(b), rig.involute(a))), "(ab)* = b* a*");
      } else {
        check(rig.equal(ab, rig.mul(rig.involute(a), rig.involute(b))), "(ab)* = a* b*");
      }
    }
    if constexpr (PositiveRig<R>) {
      check(rig.is_positive(rig.mul(rig.involute(a), a)), "a* a is positive");
      const auto p = rig.mul(rig.involute(a), a);
      const auto q = rig.mul(rig.involute(b), b);
      if (rig.equal(rig.add(p, q), rig.zero())) {
        check(rig.equal(p, rig.zero()) && rig.equal(q, rig.zero()), "positive cancellation");
      }
    }
  }
  return report;
}

/// Positivity boundary: r, s in R+ with r + s = 0 must both be zero. Checked
/// on the supplied candidates.
template <PositiveRig R>
bool positivity_cancellation_holds(const R& rig, const std::vector<typename R::value_type>& candidates) {
  for (const auto& r : candidates) {
    for (const auto& s : candidates) {
      if (rig.is_positive(r) && rig.is_positive(s) && rig.equal(rig.add(r, s), rig.zero()) &&
          !(rig.equal(r, rig.zero()) && rig.equal(s, rig.zero()))) {
        return false;
      }
    }
  }
  return true;
}

/// True iff `r` commutes with every enumerated basis element (exact test for
/// EnumerableRig) and with `samples` random elements. Commutative rigs answer
/// true directly. Throws rig.NotSampleable when a noncommutative rig offers
/// neither a basis nor samples.
template <Rig R>
bool center_membership(const typename R::value_type& r, const R& rig, std::size_t samples,
                       std::uint64_t seed = 0) {
  if constexpr (R::commutative) {
    return true;
  } else {
    auto commutes = [&](const typename R::value_type& x) {
      return rig.equal(rig.mul(r, x), rig.mul(x, r));
    };
    bool enumerated = false;
    if constexpr (EnumerableRig<R>) {
      for (const auto& e : rig.basis()) {
        if (!commutes(e)) return false;
      }
      enumerated = true;
    }
    if (!enumerated && samples == 0) {
      fail("rig.NotSampleable", "rig '" + rig.name() + "' has no basis and no samples were requested");
    }
    std::mt19937_64 gen(seed);
    for (std::size_t i = 0; i < samples; ++i) {
      if (!commutes(rig.sample(gen))) return false;
    }
    return true;
  }
}

}  // namespace catfield
