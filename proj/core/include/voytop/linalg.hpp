#ifndef VOYTOP_LINALG_HPP
#define VOYTOP_LINALG_HPP

#include <Eigen/Dense>

namespace voytop::linalg {

using DenseMatrix = Eigen::MatrixXd;

struct SvdResult {
  Eigen::MatrixXd U;  // n x k, orthonormal columns
  Eigen::VectorXd S;  // k singular values, descending
  Eigen::MatrixXd V;  // m x k, orthonormal columns
};

struct EigenResult {
  Eigen::VectorXd values;   // k eigenvalues, descending
  Eigen::MatrixXd vectors;  // n x k, orthonormal columns
};

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kDefaultMaxIter = 1000;

// Top-k eigenpairs of a symmetric matrix by block power (subspace)
// iteration with Gram-Schmidt re-orthonormalization and Rayleigh-Ritz
// extraction. Start vectors are seeded, so results are reproducible.
EigenResult sym_eigen_topk(const DenseMatrix& A, int k, double tol = kDefaultTol,
                           int max_iter = kDefaultMaxIter);

// Top-k singular triplets via the smaller Gram matrix (A^T A or A A^T).
// Sign convention: the largest-magnitude entry of each V column is positive.
SvdResult truncated_svd(const DenseMatrix& A, int k, double tol = kDefaultTol,
                        int max_iter = kDefaultMaxIter);

}  // namespace voytop::linalg

#endif  // VOYTOP_LINALG_HPP
