#pragma once

// Seeded generators and independent oracles shared by the unit and acceptance
// tests. Nothing here calls the library's convolution index, kernels, Gram
// assembly or closure code.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "catfield/catfield.hpp"

namespace testsupport {

using catfield::CategoryPtr;
using catfield::Complex;
using catfield::Index;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  std::mt19937_64& engine() { return eng_; }
  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
  bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
  Complex complex() {
    const double re = uniform();
    const double im = uniform();
    return {re, im};
  }

  /// Random weights on roughly `density` of the arrows.
  template <catfield::Rig R>
  catfield::AlgElement<R> element(const CategoryPtr& cat, const R& rig, double density = 0.6) {
    catfield::AlgElement<R> e(cat, rig);
    for (Index a = 0; a < cat->arrow_count(); ++a) {
      if (coin(density)) e.set(a, rig.sample(eng_));
    }
    return e;
  }

  /// Random preorder on k objects: a random DAG relation closed transitively.
  CategoryPtr preorder(std::size_t k, double p = 0.4) {
    std::vector<std::string> objects;
    for (std::size_t i = 0; i < k; ++i) objects.push_back("v" + std::to_string(i));
    std::vector<std::vector<bool>> rel(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
      rel[i][i] = true;
      for (std::size_t j = i + 1; j < k; ++j) rel[i][j] = coin(p);
    }
    for (std::size_t m = 0; m < k; ++m) {
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) rel[i][j] = rel[i][j] || (rel[i][m] && rel[m][j]);
      }
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (rel[i][j]) pairs.emplace_back(objects[i], objects[j]);
      }
    }
    return catfield::make_preorder(objects, pairs, "random-preorder");
  }

  std::vector<bool> subset(std::size_t n, double p = 0.5) {
    std::vector<bool> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = coin(p);
    return mask;
  }

 private:
  std::mt19937_64 eng_;
};

// --- category corpus -------------------------------------------------------------------

struct NamedCategory {
  std::string label;
  CategoryPtr cat;
};

inline CategoryPtr chain(std::size_t length) {
  std::vector<std::string> v;
  std::vector<catfield::GraphEdge> e;
  for (std::size_t i = 0; i <= length; ++i) v.push_back("v" + std::to_string(i));
  for (std::size_t i = 0; i < length; ++i) e.push_back({"e" + std::to_string(i), v[i], v[i + 1]});
  return catfield::make_free_acyclic(v, e, "chain" + std::to_string(length));
}

/// Two parallel two-step paths from s to t, not identified.
inline CategoryPtr diamond() {
  return catfield::make_free_acyclic({"s", "l", "r", "t"},
                                     {{"f", "s", "l"}, {"g", "l", "t"}, {"h", "s", "r"}, {"k", "r", "t"}},
                                     "diamond");
}

inline std::vector<NamedCategory> category_corpus() {
  std::vector<NamedCategory> out;
  for (std::size_t n = 1; n <= 6; ++n) {
    out.push_back({"discrete " + std::to_string(n), catfield::make_discrete(n)});
    out.push_back({"indiscrete " + std::to_string(n), catfield::make_indiscrete(n)});
  }
  out.push_back({"Z/2", catfield::make_cyclic_group(2)});
  out.push_back({"Z/3", catfield::make_cyclic_group(3)});
  out.push_back({"S3", catfield::make_symmetric_group3()});
  for (std::size_t l = 1; l <= 3; ++l) out.push_back({"chain " + std::to_string(l), chain(l)});
  out.push_back({"diamond", diamond()});
  for (std::size_t t = 2; t <= 4; ++t) {
    for (std::size_t x = 2; x <= 4; ++x) {
      const std::string dims = std::to_string(t) + "x" + std::to_string(x);
      out.push_back({"minkowski thin " + dims,
                     catfield::minkowski_lattice(t, x, catfield::LatticeFlavor::Thin).category()});
      out.push_back({"minkowski indiscrete " + dims,
                     catfield::minkowski_lattice(t, x, catfield::LatticeFlavor::Indiscrete).category()});
    }
  }
  return out;
}

struct NamedCausal {
  std::string label;
  catfield::CausalCategory cc;
};

/// Indiscrete n with the order i <= j as causal arrows.
inline catfield::CausalCategory ordered_indiscrete(std::size_t n) {
  const CategoryPtr cat = catfield::make_indiscrete(n);
  std::vector<Index> causal;
  for (Index a = 0; a < cat->arrow_count(); ++a) {
    if (std::stoi(cat->object_id(cat->dom(a))) <= std::stoi(cat->object_id(cat->cod(a)))) causal.push_back(a);
  }
  return catfield::make_causal(cat, causal, catfield::inverse_involution(cat));
}

inline std::vector<NamedCausal> causal_corpus() {
  std::vector<NamedCausal> out;
  for (std::size_t t = 2; t <= 4; ++t) {
    for (std::size_t x = 2; x <= 4; ++x) {
      const std::string dims = std::to_string(t) + "x" + std::to_string(x);
      out.push_back({"minkowski thin " + dims, catfield::minkowski_lattice(t, x, catfield::LatticeFlavor::Thin)});
      out.push_back({"minkowski indiscrete " + dims,
                     catfield::minkowski_lattice(t, x, catfield::LatticeFlavor::Indiscrete)});
    }
  }
  out.push_back({"chain 3", catfield::make_causal(chain(3))});
  out.push_back({"diamond", catfield::make_causal(diamond())});
  out.push_back({"discrete 4", catfield::make_causal(catfield::make_discrete(4))});
  out.push_back({"ordered indiscrete 4", ordered_indiscrete(4)});
  return out;
}

// --- oracles ----------------------------------------------------------------------------

/// Composition looked up by name in the category's own description.
class NamedComposition {
 public:
  explicit NamedComposition(const catfield::FinCategory& cat) : d_(cat.describe()) {
    for (const auto& [g, f, gf] : d_.compose) table_[{g, f}] = gf;
    for (std::size_t i = 0; i < d_.arrows.size(); ++i) index_[d_.arrows[i].id] = i;
  }
  std::size_t size() const { return d_.arrows.size(); }
  /// Index of g∘f, or -1.
  long compose(std::size_t g, std::size_t f) const {
    auto it = table_.find({d_.arrows[g].id, d_.arrows[f].id});
    return it == table_.end() ? -1 : static_cast<long>(index_.at(it->second));
  }

 private:
  catfield::CategoryDescription d_;
  std::map<std::pair<std::string, std::string>, std::string> table_;
  std::map<std::string, std::size_t> index_;
};

/// Brute-force convolution over every arrow pair.
template <catfield::Rig R>
std::vector<typename R::value_type> brute_convolve(const NamedComposition& comp, const R& rig,
                                                   const std::vector<typename R::value_type>& a,
                                                   const std::vector<typename R::value_type>& b) {
  std::vector<typename R::value_type> out(comp.size(), rig.zero());
  for (std::size_t g = 0; g < comp.size(); ++g) {
    for (std::size_t f = 0; f < comp.size(); ++f) {
      const long k = comp.compose(g, f);
      if (k >= 0) out[k] = rig.add(out[k], rig.mul(a[g], b[f]));
    }
  }
  return out;
}

/// Naive fixpoint closure of the relevant-category generators.
inline std::vector<bool> relevant_closure_oracle(const catfield::CausalCategory& cc, const std::vector<bool>& objects) {
  const catfield::FinCategory& cat = cc.cat();
  const std::size_t n = cat.arrow_count();
  std::vector<bool> in(n, false);
  for (Index a = 0; a < n; ++a) {
    const bool d = objects[cat.dom(a)];
    const bool c = objects[cat.cod(a)];
    if (d && c) in[a] = true;
    if (cc.is_causal(a) && d != c) in[a] = true;
    if (cat.is_identity(a) && !d) in[a] = true;
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (Index g = 0; g < n; ++g) {
      if (!in[g]) continue;
      for (Index f = 0; f < n; ++f) {
        if (!in[f]) continue;
        const Index k = cat.compose(g, f);
        if (k != catfield::kNone && !in[k]) {
          in[k] = true;
          grew = true;
        }
      }
    }
  }
  return in;
}

/// Coined walk on the n-cycle as a 2n-dimensional state vector: coin then
/// shift, chirality 0 steps to i+1, chirality 1 to i-1.
struct DenseWalkOracle {
  std::size_t n;
  Eigen::Matrix2cd coin;

  Eigen::MatrixXcd unitary() const {
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t up = (i + 1) % n;
      const std::size_t down = (i + n - 1) % n;
      for (int k = 0; k < 2; ++k) {
        w(2 * up + 0, 2 * i + k) += coin(0, k);
        w(2 * down + 1, 2 * i + k) += coin(1, k);
      }
    }
    return w;
  }

  /// rows[t] = site probabilities (n entries) then the two chirality totals.
  std::vector<std::vector<double>> run(std::size_t site, const Eigen::Vector2cd& v, std::size_t steps) const {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(2 * n);
    psi.segment(2 * site, 2) = v;
    const Eigen::MatrixXcd w = unitary();
    std::vector<std::vector<double>> rows;
    for (std::size_t t = 0; t <= steps; ++t) {
      std::vector<double> row(n + 2, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (int k = 0; k < 2; ++k) {
          const double p = std::norm(psi(2 * i + k));
          row[i] += p;
          row[n + k] += p;
        }
      }
      rows.push_back(std::move(row));
      psi = w * psi;
    }
    return rows;
  }
};

/// Eigenvalues of a 2x2 Hermitian matrix in closed form, ascending.
inline std::pair<double, double> eig2(const Eigen::Matrix2cd& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double b = std::abs(m(0, 1));
  const double mid = 0.5 * (a + d);
  const double r = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  return {mid - r, mid + r};
}

/// Dense product of matrices in the indiscrete arrow convention: entry (i, j)
/// is the weight of j -> i, looked up by id "a<i>_<j>".
inline Eigen::MatrixXcd indiscrete_matrix(const catfield::ComplexElement& e) {
  const auto& cat = *e.category();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cat.object_count(), cat.object_count());
  for (Index a = 0; a < cat.arrow_count(); ++a) {
    const int i = std::stoi(cat.object_id(cat.cod(a))) - 1;
    const int j = std::stoi(cat.object_id(cat.dom(a))) - 1;
    m(i, j) = e.weight(a);
  }
  return m;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace testsupport
