#include "catfield/algebra.hpp"

#include <algorithm>

#include "catfield/linalg.hpp"

namespace catfield {

double max_abs_diff(const ComplexElement& a, const ComplexElement& b) {
  require_compatible(a, b);
  double worst = 0.0;
  for (Index i = 0; i < a.weights().size(); ++i) worst = std::max(worst, std::abs(a.weight(i) - b.weight(i)));
  return worst;
}

double max_abs(const ComplexElement& a) {
  double worst = 0.0;
  for (const Complex& w : a.weights()) worst = std::max(worst, std::abs(w));
  return worst;
}

std::vector<Index> subcategory_inclusion(const FinCategory& sub, const FinCategory& ambient) {
  std::vector<Index> objects(sub.object_count());
  std::vector<bool> object_hit(ambient.object_count(), false);
  for (Index o = 0; o < sub.object_count(); ++o) {
    auto hit = ambient.find_object(sub.object_id(o));
    if (!hit) fail("algebra.NotASubcategory", "object '" + sub.object_id(o) + "' is not in '" + ambient.name() + "'");
    if (object_hit[*hit]) fail("algebra.NotASubcategory", "object map is not injective");
    object_hit[*hit] = true;
    objects[o] = *hit;
  }
  std::vector<Index> arrows(sub.arrow_count());
  std::vector<Index> back(ambient.arrow_count(), kNone);
  for (Index a = 0; a < sub.arrow_count(); ++a) {
    auto hit = ambient.find_arrow(sub.arrow_id(a));
    if (!hit) fail("algebra.NotASubcategory", "arrow '" + sub.arrow_id(a) + "' is not in '" + ambient.name() + "'");
    if (ambient.dom(*hit) != objects[sub.dom(a)] || ambient.cod(*hit) != objects[sub.cod(a)]) {
      fail("algebra.NotASubcategory", "arrow '" + sub.arrow_id(a) + "' has different endpoints in the ambient category");
    }
    arrows[a] = *hit;
    back[*hit] = a;
  }
  for (Index o = 0; o < sub.object_count(); ++o) {
    if (arrows[sub.identity(o)] != ambient.identity(objects[o])) {
      fail("algebra.NotASubcategory", "identity of '" + sub.object_id(o) + "' is not the ambient identity");
    }
  }
  for (Index g = 0; g < sub.arrow_count(); ++g) {
    for (Index f : sub.arrows_into(sub.dom(g))) {
      const Index gf = ambient.compose(arrows[g], arrows[f]);
      if (back[gf] == kNone || back[gf] != sub.compose(g, f)) {
        fail("algebra.NotASubcategory", "composite of '" + sub.arrow_id(g) + "' and '" + sub.arrow_id(f) +
                                            "' differs from the ambient composite");
      }
    }
  }
  return arrows;
}

void require_indiscrete(const FinCategory& cat) {
  const std::size_t n = cat.object_count();
  bool ok = cat.arrow_count() == n * n;
  for (Index i = 0; ok && i < n; ++i) {
    for (Index j = 0; ok && j < n; ++j) ok = cat.hom(j, i).size() == 1;
  }
  if (!ok) fail("algebra.NotIndiscrete", "'" + cat.name() + "' is not an indiscrete category");
}

Eigen::MatrixXcd to_matrix(const ComplexElement& a) {
  const FinCategory& cat = *a.category();
  require_indiscrete(cat);
  const auto n = static_cast<Eigen::Index>(cat.object_count());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (Index c = 0; c < cat.arrow_count(); ++c) m(cat.cod(c), cat.dom(c)) = a.weight(c);
  return m;
}

ComplexElement from_matrix(const CategoryPtr& cat, const Eigen::MatrixXcd& m) {
  require_indiscrete(*cat);
  const auto n = static_cast<Eigen::Index>(cat->object_count());
  if (m.rows() != n || m.cols() != n) {
    fail("algebra.MismatchedCategory", "matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                           ", category has " + std::to_string(n) + " objects");
  }
  std::vector<Complex> w(cat->arrow_count());
  for (Index c = 0; c < cat->arrow_count(); ++c) w[c] = m(cat->cod(c), cat->dom(c));
  return ComplexElement::from_weights(cat, ComplexRig{}, std::move(w));
}

Eigen::MatrixXcd to_block_matrix(const AlgElement<MatrixRig>& a) {
  const FinCategory& cat = *a.category();
  require_indiscrete(cat);
  const int d = a.rig().dim;
  const auto n = static_cast<Eigen::Index>(cat.object_count());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n * d, n * d);
  for (Index c = 0; c < cat.arrow_count(); ++c) {
    m.block(static_cast<Eigen::Index>(cat.cod(c)) * d, static_cast<Eigen::Index>(cat.dom(c)) * d, d, d) = a.weight(c);
  }
  return m;
}

namespace detail {

std::vector<ComplexElement> center_basis_unbounded(const CategoryPtr& cat, const std::vector<bool>* allowed,
                                                   double rel_tol) {
  const std::size_t n = cat->arrow_count();
  if (allowed && allowed->size() != n) fail("algebra.MismatchedCategory", "support mask has the wrong length");

  // Commuting with iota^{1_X} for every X already forces the support onto
  // endomorphisms, so only those are unknowns and identities need no rows.
  std::vector<Index> unknowns;
  std::vector<Eigen::Index> column(n, -1);
  for (Index a = 0; a < n; ++a) {
    if (cat->dom(a) == cat->cod(a) && (!allowed || (*allowed)[a])) {
      column[a] = static_cast<Eigen::Index>(unknowns.size());
      unknowns.push_back(a);
    }
  }
  const auto cols = static_cast<Eigen::Index>(unknowns.size());
  if (cols == 0) return {};

  // Row k of block c is the coefficient of iota^k in iota^c alpha - alpha iota^c.
  std::vector<Eigen::MatrixXd> blocks;
  for (Index c = 0; c < n; ++c) {
    if (cat->is_identity(c)) continue;
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), cols);
    for (Index r : cat->arrows_into(cat->dom(c))) {
      if (column[r] >= 0) block(cat->compose(c, r), column[r]) += 1.0;
    }
    for (Index l : cat->arrows_out_of(cat->cod(c))) {
      if (column[l] >= 0) block(cat->compose(l, c), column[l]) -= 1.0;
    }
    blocks.push_back(std::move(block));
  }

  const Eigen::MatrixXd basis = linalg::null_space(blocks, cols, rel_tol);
  std::vector<ComplexElement> out;
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    std::vector<Complex> w(n);
    for (Eigen::Index i = 0; i < cols; ++i) w[unknowns[i]] = basis(i, j);
    out.push_back(ComplexElement::from_weights(cat, ComplexRig{}, std::move(w)));
  }
  return out;
}

}  // namespace detail

std::vector<ComplexElement> center_basis(const CategoryPtr& cat, const std::vector<bool>* allowed, double rel_tol) {
  const std::size_t n = cat->arrow_count();
  if (n > kMaxCenterArrows) {
    fail("algebra.TooLarge", "center computation is limited to " + std::to_string(kMaxCenterArrows) +
                                 " arrows, '" + cat->name() + "' has " + std::to_string(n));
  }
  return detail::center_basis_unbounded(cat, allowed, rel_tol);
}

std::vector<ComplexElement> center_basis(const CategoryPtr& cat, const RigSpec& rig) {
  if (rig.kind != RigKind::Complex) {
    fail("algebra.UnsupportedRig", "center basis needs the complex rig, got '" + rig.name + "'");
  }
  return center_basis(cat);
}

}  // namespace catfield
