#pragma once

#include <Eigen/Dense>
#include <vector>

namespace catfield::linalg {

/// Orthonormal basis (columns) of the null space of the matrix obtained by
/// stacking `row_blocks` vertically. Blocks are folded into a running R
/// factor so the tall system is never materialized. Singular values at or
/// below rel_tol * sigma_max count as zero.
Eigen::MatrixXd null_space(const std::vector<Eigen::MatrixXd>& row_blocks, Eigen::Index columns,
                           double rel_tol);

struct HermitianSpectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors;  // columns
};

/// Symmetrizes (m + m^H)/2 before solving.
HermitianSpectrum hermitian_eig(const Eigen::MatrixXcd& m);
double min_eigenvalue(const Eigen::MatrixXcd& m);
/// Spectral norm of a Hermitian matrix.
double hermitian_norm(const Eigen::MatrixXcd& m);
/// Largest |m(i,j) - m(j,i)*|.
double hermitian_defect(const Eigen::MatrixXcd& m);

}  // namespace catfield::linalg
