#include "catfield/gns.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "catfield/linalg.hpp"

namespace catfield {

namespace {

void require_complex(const State& s) {
  if (s.dimension() != 1) fail("gns.UnsupportedRig", "GNS is built over the complex rig, state is over " + s.rig().name);
}

// Orthonormalizing map for a PSD matrix: columns V_keep Λ^{-1/2}, plus the
// dropped eigenvectors.
struct Whitening {
  Eigen::MatrixXcd keep;
  Eigen::MatrixXcd null;
  double top = 0.0;
};

Whitening whiten(const Eigen::MatrixXcd& g, double tol) {
  Whitening w;
  const auto n = g.rows();
  if (n == 0) {
    w.keep.resize(0, 0);
    w.null.resize(0, 0);
    return w;
  }
  const linalg::HermitianSpectrum spec = linalg::hermitian_eig(g);
  w.top = std::max(0.0, spec.values.maxCoeff());
  const double cutoff = tol * w.top;
  std::vector<Eigen::Index> keep, drop;
  for (Eigen::Index i = 0; i < n; ++i) (spec.values(i) > cutoff && w.top > 0.0 ? keep : drop).push_back(i);
  w.keep.resize(n, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    w.keep.col(static_cast<Eigen::Index>(j)) = spec.vectors.col(keep[j]) / std::sqrt(spec.values(keep[j]));
  }
  w.null.resize(n, static_cast<Eigen::Index>(drop.size()));
  for (std::size_t j = 0; j < drop.size(); ++j) w.null.col(static_cast<Eigen::Index>(j)) = spec.vectors.col(drop[j]);
  return w;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::VectorXcd GnsSpace::vector(const ComplexElement& a) const {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(a.weights().size()));
  for (Index c = 0; c < a.weights().size(); ++c) x(c) = a.weight(c);
  return basis_map.adjoint() * (gram * x);
}

Eigen::MatrixXcd GnsSpace::represent(const ComplexElement& a) const {
  const auto d = static_cast<Eigen::Index>(dimension);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (Index c : a.support()) out += a.weight(c) * rep[c];
  return out;
}

GnsSpace gns_construct(const State& s, double tol) {
  require_complex(s);
  const InvolutionStructure& inv = s.involution();
  if (!inv.carrier_is_whole()) {
    fail("gns.CarrierNotWholeCategory", "GNS needs the involution defined on every arrow");
  }
  const FinCategory& cat = *s.category();
  const auto n = static_cast<Eigen::Index>(cat.arrow_count());

  GnsSpace g;
  g.category = s.category();
  g.rank_tolerance = tol;
  g.gram = Eigen::MatrixXcd::Zero(n, n);
  for (Index cp = 0; cp < cat.arrow_count(); ++cp) {
    const Index left = inv.dagger(cp);
    for (Index c : cat.arrows_into(cat.cod(cp))) g.gram(cp, c) = s.scalar(cat.compose(left, c));
  }

  const linalg::HermitianSpectrum spec = linalg::hermitian_eig(g.gram);
  g.spectrum = spec.values;
  const double top = spec.values.size() ? spec.values.maxCoeff() : 0.0;
  const double gnorm = spec.values.size() ? spec.values.cwiseAbs().maxCoeff() : 0.0;
  if (linalg::hermitian_defect(g.gram) > tol * (1.0 + gnorm) || (spec.values.size() && spec.values.minCoeff() < -tol * (1.0 + gnorm))) {
    fail("gns.NotPSD", "Gram matrix is not positive semidefinite");
  }

  const double cutoff = tol * top;
  std::vector<Eigen::Index> keep;
  double smallest_kept = std::numeric_limits<double>::infinity();
  double largest_dropped = 0.0;
  for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
    if (spec.values(i) > cutoff) {
      keep.push_back(i);
      smallest_kept = std::min(smallest_kept, spec.values(i));
    } else {
      largest_dropped = std::max(largest_dropped, std::abs(spec.values(i)));
    }
  }
  const double noise = std::numeric_limits<double>::epsilon() * std::max(1.0, top) * static_cast<double>(n);
  g.cliff_ratio = smallest_kept / std::max(largest_dropped, noise);
  if (!keep.empty() && g.cliff_ratio < kMinCliffRatio) {
    std::ostringstream msg;
    msg << "kept/dropped eigenvalue ratio " << g.cliff_ratio << " at cutoff " << cutoff;
    fail("gns.DegenerateTolerance", msg.str());
  }

  g.dimension = keep.size();
  const auto d = static_cast<Eigen::Index>(g.dimension);
  g.basis_map.resize(n, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    g.basis_map.col(j) = spec.vectors.col(keep[j]) / std::sqrt(spec.values(keep[j]));
  }
  Eigen::VectorXcd eps = Eigen::VectorXcd::Zero(n);
  for (Index o = 0; o < cat.object_count(); ++o) eps(cat.identity(o)) = 1.0;
  const Eigen::MatrixXcd bg = g.basis_map.adjoint() * g.gram;
  g.vacuum = bg * eps;

  g.rep.resize(cat.arrow_count());
  for (Index c = 0; c < cat.arrow_count(); ++c) {
    // G L_c B: column j is the Gram image of iota^c times basis vector j.
    Eigen::MatrixXcd lb = Eigen::MatrixXcd::Zero(n, d);
    for (Index r : cat.arrows_into(cat.dom(c))) lb.row(cat.compose(c, r)) += g.basis_map.row(r);
    g.rep[c] = g.basis_map.adjoint() * (g.gram * lb);
  }

  // Invariants, checked before the space is handed out.
  auto violation = [](const std::string& what) { fail("gns.InvariantViolation", what); };
  if (d > 0 && max_abs(bg * g.basis_map - Eigen::MatrixXcd::Identity(d, d)) > kGnsCheckTolerance) {
    violation("quotient basis is not orthonormal");
  }
  if (std::abs(g.vacuum.squaredNorm() - 1.0) > kGnsCheckTolerance) violation("vacuum is not a unit vector");
  const Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(d, d);
  for (Index cp = 0; cp < cat.arrow_count(); ++cp) {
    for (Index c = 0; c < cat.arrow_count(); ++c) {
      const Index comp = cat.compose(cp, c);
      const Eigen::MatrixXcd& expect = comp == kNone ? zero : g.rep[comp];
      if (max_abs(g.rep[cp] * g.rep[c] - expect) > kGnsCheckTolerance) {
        violation("pi is not multiplicative on '" + cat.arrow_id(cp) + "', '" + cat.arrow_id(c) + "'");
      }
    }
    const Complex expectation = g.vacuum.dot(g.rep[cp] * g.vacuum);
    if (std::abs(expectation - s.scalar(cp)) > kGnsCheckTolerance) {
      violation("vacuum expectation differs from the state on '" + cat.arrow_id(cp) + "'");
    }
  }
  return g;
}

ObjectModuleMap module_map(const FinCategory& cat, Index c) {
  if (c >= cat.arrow_count()) fail("gns.UnknownArrow", "arrow index out of range");
  ObjectModuleMap m;
  m.source_object = cat.dom(c);
  m.target_object = cat.cod(c);
  const auto src = cat.arrows_into(m.source_object);
  const auto dst = cat.arrows_into(m.target_object);
  m.source_arrows.assign(src.begin(), src.end());
  m.target_arrows.assign(dst.begin(), dst.end());
  m.matrix = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dst.size()), static_cast<Eigen::Index>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j) {
    const Index image = cat.compose(c, src[j]);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (dst[i] == image) m.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    }
  }
  return m;
}

Eigen::MatrixXcd object_gram(const State& s, Index object, std::vector<Index>* labels) {
  require_complex(s);
  const FinCategory& cat = *s.category();
  const InvolutionStructure& inv = s.involution();
  const auto into = cat.arrows_into(object);
  for (Index c : into) {
    if (!inv.in_carrier(c)) fail("gns.CarrierNotWholeCategory", "'" + cat.arrow_id(c) + "' has no dagger");
  }
  const auto n = static_cast<Eigen::Index>(into.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Index left = inv.dagger(into[i]);
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = s.scalar(cat.compose(left, into[j]));
  }
  if (labels) labels->assign(into.begin(), into.end());
  return g;
}

ContractivityResult contractivity_from_blocks(const Eigen::MatrixXcd& g_dom, const Eigen::MatrixXcd& g_cod,
                                              const Eigen::MatrixXcd& m, double tol) {
  ContractivityResult r;
  const Eigen::MatrixXcd pulled = m.adjoint() * g_cod * m;
  const Whitening w = whiten(g_dom, tol);
  if (w.keep.cols() > 0) {
    const Eigen::MatrixXcd h = w.keep.adjoint() * pulled * w.keep;
    r.operator_bound = linalg::hermitian_eig(h).values.maxCoeff();
  }
  const double scale = 1.0 + std::max(w.top, linalg::hermitian_norm(pulled));
  for (Eigen::Index j = 0; j < w.null.cols(); ++j) {
    const Complex v = w.null.col(j).dot(pulled * w.null.col(j));
    if (std::abs(v) > tol * scale) r.null_implication = false;
  }
  r.holds = r.operator_bound <= 1.0 + tol && r.null_implication;
  return r;
}

ContractivityResult contractivity_check(const State& s, Index c, double tol) {
  const FinCategory& cat = *s.category();
  if (c >= cat.arrow_count()) fail("gns.UnknownArrow", "arrow index out of range");
  if (cat.is_identity(c)) {
    ContractivityResult r;
    r.holds = true;
    r.operator_bound = 1.0;
    return r;
  }
  const ObjectModuleMap m = module_map(cat, c);
  return contractivity_from_blocks(object_gram(s, m.source_object), object_gram(s, m.target_object), m.matrix, tol);
}

Eigen::MatrixXcd induced_map_from_blocks(const Eigen::MatrixXcd& g_dom, const Eigen::MatrixXcd& g_cod,
                                         const Eigen::MatrixXcd& m, double tol) {
  const ContractivityResult r = contractivity_from_blocks(g_dom, g_cod, m, tol);
  if (!r.holds) {
    std::ostringstream msg;
    msg << "operator bound " << r.operator_bound << (r.null_implication ? "" : ", null space not preserved");
    fail("gns.ContractivityFails", msg.str());
  }
  const Whitening wd = whiten(g_dom, tol);
  const Whitening wc = whiten(g_cod, tol);
  return wc.keep.adjoint() * g_cod * m * wd.keep;
}

Eigen::MatrixXcd hilbert_functor_map(const State& s, Index c, double tol) {
  const FinCategory& cat = *s.category();
  if (c >= cat.arrow_count()) fail("gns.UnknownArrow", "arrow index out of range");
  const ObjectModuleMap m = module_map(cat, c);
  const Eigen::MatrixXcd g_dom = object_gram(s, m.source_object);
  const Eigen::MatrixXcd g_cod = object_gram(s, m.target_object);
  try {
    return induced_map_from_blocks(g_dom, g_cod, m.matrix, tol);
  } catch (const Error& e) {
    fail("gns.ContractivityFails", "arrow '" + cat.arrow_id(c) + "': " + e.what());
  }
}

}  // namespace catfield
