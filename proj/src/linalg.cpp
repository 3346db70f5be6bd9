#include "catfield/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>

namespace catfield::linalg {

Eigen::MatrixXd null_space(const std::vector<Eigen::MatrixXd>& row_blocks, Eigen::Index columns,
                           double rel_tol) {
  Eigen::MatrixXd r(0, columns);
  for (const auto& block : row_blocks) {
    if (block.rows() == 0) continue;
    Eigen::MatrixXd stacked(r.rows() + block.rows(), columns);
    stacked << r, block;
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
    const Eigen::Index keep = std::min<Eigen::Index>(stacked.rows(), columns);
    r = qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
  }
  if (columns == 0) return Eigen::MatrixXd(0, 0);
  if (r.rows() == 0) return Eigen::MatrixXd::Identity(columns, columns);

  Eigen::MatrixXd square = Eigen::MatrixXd::Zero(columns, columns);
  square.topRows(r.rows()) = r;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(square, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cutoff = rel_tol * (sigma.size() ? sigma(0) : 0.0);
  std::vector<Eigen::Index> null_cols;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) <= cutoff) null_cols.push_back(i);
  }
  Eigen::MatrixXd basis(columns, static_cast<Eigen::Index>(null_cols.size()));
  for (std::size_t k = 0; k < null_cols.size(); ++k) basis.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(null_cols[k]);
  return basis;
}

HermitianSpectrum hermitian_eig(const Eigen::MatrixXcd& m) {
  const Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  return {eig.eigenvalues(), eig.eigenvectors()};
}

double min_eigenvalue(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double hermitian_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  const Eigen::MatrixXcd h = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

double hermitian_defect(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace catfield::linalg
