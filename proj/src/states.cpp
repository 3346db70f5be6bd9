#include "catfield/states.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "catfield/linalg.hpp"

namespace catfield {

int state_dimension(const RigSpec& rig) {
  if (rig.kind == RigKind::Complex) return 1;
  if (rig.kind == RigKind::Matrix) return rig.dimension;
  fail("states.UnsupportedRig", "states need a rig with involution and positivity, got '" + rig.name + "'");
}

double State::min_block_eigenvalue() const {
  double m = 0.0;
  bool first = true;
  for (const auto& c : certs_) {
    if (first || c.min_eigenvalue < m) m = c.min_eigenvalue;
    first = false;
  }
  return m;
}

Eigen::MatrixXcd gram_block(const InvolutionStructure& inv, const std::vector<StateWeight>& weights, int dim,
                            Index object, std::vector<Index>* labels) {
  const FinCategory& cat = *inv.category();
  std::vector<Index> arrows;
  for (Index c : cat.arrows_into(object)) {
    if (inv.in_carrier(c)) arrows.push_back(c);
  }
  const auto n = static_cast<Eigen::Index>(arrows.size()) * dim;
  Eigen::MatrixXcd k(n, n);
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const Index left = inv.dagger(arrows[i]);
    for (std::size_t j = 0; j < arrows.size(); ++j) {
      const StateWeight& d = weights[cat.compose(left, arrows[j])];
      for (int kk = 0; kk < dim; ++kk) {
        for (int l = 0; l < dim; ++l) {
          k(static_cast<Eigen::Index>(i) * dim + kk, static_cast<Eigen::Index>(j) * dim + l) = d(l, kk);
        }
      }
    }
  }
  if (labels) *labels = std::move(arrows);
  return k;
}

State state_from_weights(const InvolutionStructure& inv, const RigSpec& rig, std::vector<StateWeight> weights,
                         double tol) {
  const int d = state_dimension(rig);
  const FinCategory& cat = *inv.category();
  if (!inv.is_dagger()) {
    fail("states.UnsupportedInvolution", "states need a contravariant, identity-on-objects involution");
  }
  if (weights.size() != cat.arrow_count()) {
    fail("states.MismatchedCategory", std::to_string(weights.size()) + " weights for " +
                                          std::to_string(cat.arrow_count()) + " arrows");
  }
  for (Index c = 0; c < cat.arrow_count(); ++c) {
    StateWeight& w = weights[c];
    if (w.size() == 0) w = StateWeight::Zero(d, d);
    if (w.rows() != d || w.cols() != d) {
      fail("states.MismatchedRig", "weight on '" + cat.arrow_id(c) + "' is not " + std::to_string(d) + "x" +
                                       std::to_string(d));
    }
    if (!w.allFinite()) fail("states.MismatchedRig", "weight on '" + cat.arrow_id(c) + "' is not finite");
    if (!inv.in_carrier(c)) {
      if (w.cwiseAbs().maxCoeff() > kAbsoluteFloor) {
        fail("states.SupportOffCarrier", "weight on '" + cat.arrow_id(c) + "', outside the involution carrier");
      }
      w.setZero();
    }
  }

  State s(inv);
  s.rig_ = rig;
  s.dim_ = d;
  s.tol_ = tol;

  Complex norm{0.0, 0.0};
  for (Index o = 0; o < cat.object_count(); ++o) norm += weights[cat.identity(o)].trace();
  s.normalization_ = norm;
  if (!close(norm, Complex(1.0, 0.0), tol)) {
    std::ostringstream msg;
    msg << "weights on identities sum to (" << norm.real() << ", " << norm.imag() << "), expected 1";
    fail("states.NotNormalized", msg.str());
  }

  for (Index c = 0; c < cat.arrow_count(); ++c) {
    if (!inv.in_carrier(c)) continue;
    const StateWeight& w = weights[c];
    const StateWeight& wd = weights[inv.dagger(c)];
    const double scale = std::max(w.cwiseAbs().maxCoeff(), wd.cwiseAbs().maxCoeff());
    const double defect = (wd - w.adjoint()).cwiseAbs().maxCoeff();
    if (!close(defect, scale, tol)) {
      std::ostringstream msg;
      msg << "weight on '" << cat.arrow_id(inv.dagger(c)) << "' is not the involution of the weight on '"
          << cat.arrow_id(c) << "' (defect " << defect << ")";
      fail("states.HermitianViolation", msg.str());
    }
  }

  for (Index o = 0; o < cat.object_count(); ++o) {
    const Eigen::MatrixXcd k = gram_block(inv, weights, d, o);
    BlockCertificate cert;
    cert.object = o;
    cert.min_eigenvalue = linalg::min_eigenvalue(k);
    cert.norm = linalg::hermitian_norm(k);
    if (cert.min_eigenvalue < -tol * (1.0 + cert.norm)) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "Gram block at object '" << cat.object_id(o) << "' has eigenvalue " << cert.min_eigenvalue;
      fail("states.NotPSD", msg.str());
    }
    if (cert.min_eigenvalue < 0.0) s.borderline_ = true;
    s.certs_.push_back(cert);
  }
  s.weights_ = std::move(weights);
  return s;
}

State state_from_weights(const InvolutionStructure& inv, const std::vector<Complex>& weights, double tol) {
  std::vector<StateWeight> blocks;
  blocks.reserve(weights.size());
  for (const Complex& w : weights) blocks.push_back(StateWeight::Constant(1, 1, w));
  return state_from_weights(inv, rig_instance("complex"), std::move(blocks), tol);
}

namespace {

void require_same(const State& s, const CategoryPtr& cat) {
  if (!same_category(s.category(), cat)) {
    fail("states.MismatchedCategory", "state is on '" + s.category()->name() + "', element on '" + cat->name() + "'");
  }
}

}  // namespace

Complex evaluate(const State& s, const ComplexElement& a) {
  require_same(s, a.category());
  if (s.dimension() != 1) fail("states.MismatchedRig", "state is over " + s.rig().name + ", element over complex");
  Complex sum{0.0, 0.0};
  for (Index c : a.support()) sum += a.weight(c) * s.scalar(c);
  return sum;
}

Complex evaluate(const State& s, const AlgElement<MatrixRig>& a) {
  require_same(s, a.category());
  if (s.dimension() != a.rig().dim) {
    fail("states.MismatchedRig", "state is over " + s.rig().name + ", element over " + a.rig().name());
  }
  Complex sum{0.0, 0.0};
  for (Index c : a.support()) sum += (s.weight(c) * a.weight(c)).trace();
  return sum;
}

namespace {

// The form (x, y) -> phi(a(x)* a(y)) over coefficient vectors on a basis of
// carrier indeterminates (times matrix units when d > 1).
template <class R>
class AlgebraForm {
 public:
  using Element = AlgElement<R>;

  AlgebraForm(const State& s, R rig) : s_(s), rig_(std::move(rig)) {
    const FinCategory& cat = *s.category();
    const int d = s.dimension();
    for (Index c : s.involution().carrier_arrows()) {
      for (int p = 0; p < d; ++p) {
        for (int q = 0; q < d; ++q) {
          slots_.push_back({c, p, q});
          std::string label = cat.arrow_id(c);
          if (d > 1) label += "[" + std::to_string(p) + "," + std::to_string(q) + "]";
          labels_.push_back(std::move(label));
        }
      }
    }
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      std::vector<Complex> e(slots_.size(), Complex(0.0, 0.0));
      e[i] = 1.0;
      basis_star_.push_back(involute_element(element(e), s_.involution()));
    }
  }

  std::size_t size() const { return slots_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  Element element(const std::vector<Complex>& x) const {
    Element a(s_.category(), rig_);
    std::vector<typename R::value_type> w = a.weights();
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      if constexpr (std::is_same_v<R, ComplexRig>) {
        w[slots_[i].arrow] += x[i];
      } else {
        w[slots_[i].arrow](slots_[i].p, slots_[i].q) += x[i];
      }
    }
    return Element::from_weights(s_.category(), rig_, std::move(w));
  }

  Complex quadratic(const std::vector<Complex>& x) const {
    const Element a = element(x);
    return evaluate(s_, convolve(involute_element(a, s_.involution()), a));
  }

  /// (K x)_i = phi(b_i* a(x)).
  std::vector<Complex> apply(const std::vector<Complex>& x) const {
    const Element a = element(x);
    std::vector<Complex> out(slots_.size());
    for (std::size_t i = 0; i < slots_.size(); ++i) out[i] = evaluate(s_, convolve(basis_star_[i], a));
    return out;
  }

 private:
  struct Slot {
    Index arrow;
    int p, q;
  };
  const State& s_;
  R rig_;
  std::vector<Slot> slots_;
  std::vector<std::string> labels_;
  std::vector<Element> basis_star_;
};

double norm2(const std::vector<Complex>& x) {
  double s = 0.0;
  for (const Complex& v : x) s += std::norm(v);
  return std::sqrt(s);
}

void normalize(std::vector<Complex>& x) {
  const double n = norm2(x);
  if (n > 0.0) {
    for (Complex& v : x) v /= n;
  }
}

template <class R>
ProbeReport run_probe(const State& s, R rig, std::size_t trials, std::uint64_t seed, std::size_t refine_steps) {
  const AlgebraForm<R> form(s, std::move(rig));
  ProbeReport report;
  report.witness_labels = form.labels();
  const std::size_t n = form.size();
  if (n == 0) return report;

  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool first = true;
  auto consider = [&](const std::vector<Complex>& x) {
    const Complex v = form.quadratic(x);
    ++report.trials;
    report.max_imag = std::max(report.max_imag, std::abs(v.imag()));
    report.scale = std::max(report.scale, std::abs(v));
    if (first || v.real() < report.min_real) {
      report.min_real = v.real();
      report.witness = x;
      first = false;
    }
  };

  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<Complex> x(n);
    for (auto& v : x) v = Complex(normal(gen), normal(gen));
    normalize(x);
    consider(x);
  }
  if (refine_steps == 0) return report;

  // Upper spectral estimate by power iteration from a random start (constant
  // vectors are eigenvectors of group Gram matrices), then iterate
  // x <- sigma x - K x, whose dominant direction is the bottom of the spectrum.
  std::vector<Complex> y(n);
  for (auto& v : y) v = Complex(normal(gen), normal(gen));
  normalize(y);
  double top = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    y = form.apply(y);
    top = norm2(y);
    if (top == 0.0) break;
    normalize(y);
  }
  const double sigma = 1.05 * top + 1e-3;
  std::vector<Complex> x = report.witness;
  for (std::size_t i = 0; i < refine_steps; ++i) {
    const std::vector<Complex> kx = form.apply(x);
    for (std::size_t j = 0; j < n; ++j) x[j] = sigma * x[j] - kx[j];
    if (norm2(x) == 0.0) break;
    normalize(x);
    consider(x);
  }
  return report;
}

}  // namespace

ProbeReport positivity_probe(const State& s, std::size_t trials, std::uint64_t seed, std::size_t refine_steps) {
  if (s.dimension() == 1) return run_probe(s, ComplexRig{}, trials, seed, refine_steps);
  return run_probe(s, MatrixRig(s.dimension()), trials, seed, refine_steps);
}

FieldState field_state(const CausalCategory& cc, const RigSpec& rig, std::vector<StateWeight> weights, double tol) {
  if (!cc.involution()) fail("states.UnsupportedInvolution", "'" + cc.cat().name() + "' has no partial involution");
  const InvolutionStructure& inv = *cc.involution();
  const int d = state_dimension(rig);
  if (weights.size() != cc.cat().arrow_count()) {
    fail("states.MismatchedCategory", std::to_string(weights.size()) + " weights for " +
                                          std::to_string(cc.cat().arrow_count()) + " arrows");
  }
  std::vector<StateWeight> carrier(weights.size());
  for (Index c = 0; c < weights.size(); ++c) {
    if (weights[c].size() == 0) weights[c] = StateWeight::Zero(d, d);
    carrier[c] = inv.in_carrier(c) ? weights[c] : StateWeight::Zero(d, d);
  }
  try {
    State s = state_from_weights(inv, rig, std::move(carrier), tol);
    return FieldState{std::move(s), std::move(weights)};
  } catch (const Error& e) {
    fail("states.CarrierRestrictionInvalid", e.what());
  }
}

Complex evaluate(const FieldState& s, const ComplexElement& a) {
  require_same(s.carrier_state, a.category());
  if (s.carrier_state.dimension() != 1) fail("states.MismatchedRig", "field state is not over the complex rig");
  Complex sum{0.0, 0.0};
  for (Index c : a.support()) sum += a.weight(c) * s.weights[c](0, 0);
  return sum;
}

State local_state(const CausalCategory& cc, const std::vector<bool>& objects, const RigSpec& rig,
                  const std::vector<StateWeight>& weights, double tol) {
  const FinCategory& cat = cc.cat();
  if (!is_region(cc, objects)) fail("states.NotARegion", "object set is not a region of '" + cat.name() + "'");
  if (!cc.involution()) fail("states.UnsupportedInvolution", "'" + cat.name() + "' has no partial involution");
  if (weights.size() != cat.arrow_count()) {
    fail("states.MismatchedCategory", std::to_string(weights.size()) + " weights for " +
                                          std::to_string(cat.arrow_count()) + " arrows");
  }
  const RegionSelection sel = relevant_category(cc, objects);
  const std::vector<bool> mask = involutive_relevant(cc, sel);
  for (Index c = 0; c < cat.arrow_count(); ++c) {
    if (!mask[c] && weights[c].size() != 0 && weights[c].cwiseAbs().maxCoeff() > kAbsoluteFloor) {
      fail("states.SupportOffCarrier", "weight on '" + cat.arrow_id(c) + "', outside the involutive relevant category");
    }
  }
  const CategoryPtr sub = cat.wide_subcategory(mask, cat.name() + "-local");
  const InvolutionStructure& inv = *cc.involution();
  std::vector<Index> all(sub->arrow_count());
  std::vector<Index> dagger(sub->arrow_count());
  std::vector<StateWeight> local(sub->arrow_count());
  for (Index a = 0; a < sub->arrow_count(); ++a) {
    const Index ambient = cat.arrow_index(sub->arrow_id(a));
    all[a] = a;
    dagger[a] = sub->arrow_index(cat.arrow_id(inv.dagger(ambient)));
    local[a] = weights[ambient];
  }
  const InvolutionStructure sub_inv = validate_involution(sub, all, dagger, inv.variance());
  return state_from_weights(sub_inv, rig, std::move(local), tol);
}

CategoryPtr support_subcategory(const State& s) {
  std::vector<Index> support;
  for (Index c = 0; c < s.weights().size(); ++c) {
    if (s.weight(c).cwiseAbs().maxCoeff() > kAbsoluteFloor) support.push_back(c);
  }
  return s.category()->generated_subcategory(support, s.category()->name() + "-support");
}

State vector_state(const InvolutionStructure& inv, const RigSpec& rig, const std::vector<Eigen::VectorXcd>& v,
                   double tol) {
  const FinCategory& cat = *inv.category();
  const int d = state_dimension(rig);
  if (v.size() != cat.object_count()) {
    fail("states.MismatchedCategory", "one vector per object is required");
  }
  for (const auto& vi : v) {
    if (vi.size() != d) fail("states.MismatchedRig", "vector length does not match the rig dimension");
  }
  std::vector<StateWeight> weights(cat.arrow_count());
  for (Index c = 0; c < cat.arrow_count(); ++c) {
    weights[c] = inv.in_carrier(c) ? StateWeight(v[cat.dom(c)] * v[cat.cod(c)].adjoint())
                                   : StateWeight(StateWeight::Zero(d, d));
  }
  return state_from_weights(inv, rig, std::move(weights), tol);
}

}  // namespace catfield
