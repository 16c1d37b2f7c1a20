#include "voytop/linalg.hpp"

#include <cmath>
#include <string>

#include "voytop/errors.hpp"
#include "voytop/io.hpp"
#include "voytop/rng.hpp"

namespace voytop::linalg {

namespace {

constexpr std::uint64_t kStartVectorSeed = 0x0123456789abcdefULL;

Eigen::MatrixXd seeded_start(Eigen::Index n, Eigen::Index k) {
  SplitMix64 rng(kStartVectorSeed);
  Eigen::MatrixXd x(n, k);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < n; ++i) x(i, j) = rng.next_double() - 0.5;
  return x;
}

// Modified Gram-Schmidt with one re-orthogonalization pass. Columns that
// collapse (rank deficiency in the iterate) are refilled from the seeded
// stream and orthogonalized again.
void orthonormalize(Eigen::MatrixXd& x, SplitMix64& refill) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index i = 0; i < j; ++i)
        x.col(j) -= x.col(i).dot(x.col(j)) * x.col(i);
    double norm = x.col(j).norm();
    if (norm < 1e-14) {
      for (Eigen::Index i = 0; i < x.rows(); ++i) x(i, j) = refill.next_double() - 0.5;
      for (int pass = 0; pass < 2; ++pass)
        for (Eigen::Index i = 0; i < j; ++i)
          x.col(j) -= x.col(i).dot(x.col(j)) * x.col(i);
      norm = x.col(j).norm();
    }
    x.col(j) /= norm;
  }
}

// In-place Jacobi eigenvalue iteration for the small k x k Rayleigh-Ritz
// matrix. Deterministic sweep order; returns values/vectors unsorted.
void jacobi_eigen(Eigen::MatrixXd a, Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index n = a.rows();
  vectors = Eigen::MatrixXd::Identity(n, n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
        g(p, p) = c;
        g(q, q) = c;
        g(p, q) = s;
        g(q, p) = -s;
        a = g.transpose() * a * g;
        vectors = vectors * g;
      }
    }
  }
  values = a.diagonal();
}

}  // namespace

EigenResult sym_eigen_topk(const DenseMatrix& A, int k, double tol, int max_iter) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw ArgumentError("sym_eigen_topk: matrix not square");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw ArgumentError("sym_eigen_topk: matrix not symmetric within 1e-10");
  if (k < 1 || k > n)
    throw ArgumentError("sym_eigen_topk: k=" + std::to_string(k) + " out of range [1," +
                        std::to_string(n) + "]");
  if (tol <= 0) throw ArgumentError("sym_eigen_topk: tol must be positive");

  // Oversampled block: iterating a slightly larger subspace decouples the
  // top-k convergence rate from gaps right at the k-th eigenvalue.
  const int kb = static_cast<int>(std::min<Eigen::Index>(n, k + 4));

  SplitMix64 refill(kStartVectorSeed ^ 0xfeedULL);
  Eigen::MatrixXd x = seeded_start(n, kb);
  orthonormalize(x, refill);

  EigenResult result;
  double achieved = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::MatrixXd y = A * x;
    orthonormalize(y, refill);
    x = y;

    // Rayleigh-Ritz on the current subspace.
    Eigen::MatrixXd t = x.transpose() * (A * x);
    t = 0.5 * (t + t.transpose());
    Eigen::VectorXd vals;
    Eigen::MatrixXd vecs;
    jacobi_eigen(t, vals, vecs);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(kb));
    for (int i = 0; i < kb; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a_, Eigen::Index b_) { return vals(a_) > vals(b_); });

    Eigen::MatrixXd ritz(n, kb);
    Eigen::VectorXd lambda(kb);
    for (int i = 0; i < kb; ++i) {
      lambda(i) = vals(order[static_cast<std::size_t>(i)]);
      ritz.col(i) = x * vecs.col(order[static_cast<std::size_t>(i)]);
    }

    const double scale = std::max(std::abs(lambda(0)), 1e-300);
    achieved = 0.0;
    for (int i = 0; i < k; ++i) {
      const double res = (A * ritz.col(i) - lambda(i) * ritz.col(i)).norm();
      achieved = std::max(achieved, res);
    }
    if (achieved <= tol * scale) {
      result.values = lambda.head(k);
      result.vectors = ritz.leftCols(k);
      return result;
    }
    x = ritz;  // iterate on the Ritz basis, already orthonormal
  }
  throw NumericError("sym_eigen_topk: no convergence in " + std::to_string(max_iter) +
                     " iterations (achieved residual " + io::format_real(achieved) + ")");
}

SvdResult truncated_svd(const DenseMatrix& A, int k, double tol, int max_iter) {
  const Eigen::Index n = A.rows();
  const Eigen::Index m = A.cols();
  if (k < 1 || k > std::min(n, m))
    throw ArgumentError("truncated_svd: k=" + std::to_string(k) + " out of range [1," +
                        std::to_string(std::min(n, m)) + "]");

  SvdResult result;
  SplitMix64 refill(kStartVectorSeed ^ 0xbeefULL);

  if (m <= n) {
    Eigen::MatrixXd gram = A.transpose() * A;
    gram = 0.5 * (gram + gram.transpose());
    auto eig = sym_eigen_topk(gram, k, tol, max_iter);
    result.V = eig.vectors;
    result.S = eig.values.cwiseMax(0.0).cwiseSqrt();
    result.U.resize(n, k);
    for (int i = 0; i < k; ++i) {
      if (result.S(i) > 1e-12) {
        result.U.col(i) = A * result.V.col(i) / result.S(i);
      } else {
        for (Eigen::Index r = 0; r < n; ++r) result.U(r, i) = refill.next_double() - 0.5;
      }
    }
    orthonormalize(result.U, refill);
  } else {
    Eigen::MatrixXd gram = A * A.transpose();
    gram = 0.5 * (gram + gram.transpose());
    auto eig = sym_eigen_topk(gram, k, tol, max_iter);
    result.U = eig.vectors;
    result.S = eig.values.cwiseMax(0.0).cwiseSqrt();
    result.V.resize(m, k);
    for (int i = 0; i < k; ++i) {
      if (result.S(i) > 1e-12) {
        result.V.col(i) = A.transpose() * result.U.col(i) / result.S(i);
      } else {
        for (Eigen::Index r = 0; r < m; ++r) result.V(r, i) = refill.next_double() - 0.5;
      }
    }
    orthonormalize(result.V, refill);
  }

  // Fixed sign convention so downstream coordinates reproduce exactly:
  // the largest-magnitude entry of each V column is positive.
  for (int i = 0; i < k; ++i) {
    Eigen::Index at = 0;
    result.V.col(i).cwiseAbs().maxCoeff(&at);
    if (result.V(at, i) < 0) {
      result.V.col(i) = -result.V.col(i);
      result.U.col(i) = -result.U.col(i);
    }
  }
  return result;
}

}  // namespace voytop::linalg
