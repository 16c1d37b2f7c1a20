#include "voytop/project.hpp"

#include <cmath>
#include <string>

#include "voytop/errors.hpp"
#include "voytop/linalg.hpp"
#include "voytop/rng.hpp"

namespace voytop {

Projection pca_project(const Eigen::MatrixXd& x, int dims) {
  const auto n = x.rows();
  if (n < 2) throw ArgumentError("pca_project: need at least 2 rows");
  if (dims < 1 || dims > x.cols())
    throw ArgumentError("pca_project: dims out of range");

  Eigen::MatrixXd centered = x.rowwise() - x.colwise().mean();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  const double trace = cov.trace();
  if (trace <= 1e-300) throw NumericError("pca_project: zero-variance input");

  auto eig = linalg::sym_eigen_topk(cov, dims);
  // Same sign convention as the SVD kernel.
  for (int i = 0; i < dims; ++i) {
    Eigen::Index at = 0;
    eig.vectors.col(i).cwiseAbs().maxCoeff(&at);
    if (eig.vectors(at, i) < 0) eig.vectors.col(i) = -eig.vectors.col(i);
  }

  Projection p;
  p.method = ProjectionMethod::pca;
  p.coords = centered * eig.vectors;
  p.explained_variance = eig.values.cwiseMax(0.0) / trace;
  return p;
}

Eigen::MatrixXd tsne_affinities(const Eigen::MatrixXd& x, double perplexity) {
  const auto n = x.rows();
  if (perplexity < 2.0) throw ArgumentError("tsne: perplexity must be >= 2");
  if (n < static_cast<Eigen::Index>(3.0 * perplexity + 1.0))
    throw ArgumentError("tsne: need N >= 3*perplexity + 1, got N=" + std::to_string(n));

  Eigen::MatrixXd d2(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d2(i, j) = (x.row(i) - x.row(j)).squaredNorm();

  const double target_entropy = std::log(perplexity);
  Eigen::MatrixXd cond = Eigen::MatrixXd::Zero(n, n);

  for (Eigen::Index i = 0; i < n; ++i) {
    double beta = 1.0, beta_lo = 0.0, beta_hi = std::numeric_limits<double>::infinity();
    Eigen::VectorXd p(n);
    for (int it = 0; it < 200; ++it) {
      double sum = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        p(j) = (j == i) ? 0.0 : std::exp(-beta * d2(i, j));
        sum += p(j);
      }
      p /= sum;
      double entropy = 0.0;
      for (Eigen::Index j = 0; j < n; ++j)
        if (p(j) > 0.0) entropy -= p(j) * std::log(p(j));
      const double diff = entropy - target_entropy;
      if (std::abs(diff) < 1e-5) break;
      if (diff > 0) {  // too flat: increase beta
        beta_lo = beta;
        beta = std::isinf(beta_hi) ? beta * 2.0 : 0.5 * (beta_lo + beta_hi);
      } else {
        beta_hi = beta;
        beta = 0.5 * (beta_lo + beta_hi);
      }
    }
    cond.row(i) = p.transpose();
  }

  Eigen::MatrixXd joint = (cond + cond.transpose()) / (2.0 * static_cast<double>(n));
  return joint;
}

Projection tsne_project(const Eigen::MatrixXd& x, int dims, const TsneOptions& opts) {
  const auto n = x.rows();
  Eigen::MatrixXd p = tsne_affinities(x, opts.perplexity);
  const double p_floor = 1e-12;

  SplitMix64 rng(opts.seed);
  Eigen::MatrixXd y(n, dims);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < dims; ++k) {
      // Box-Muller, small initial spread.
      const double u1 = std::max(rng.next_double(), 1e-300);
      const double u2 = rng.next_double();
      y(i, k) = 1e-4 * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
  }

  Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(n, dims);
  Eigen::MatrixXd gains = Eigen::MatrixXd::Ones(n, dims);

  Eigen::MatrixXd num(n, n), q(n, n), grad(n, dims);
  for (int iter = 0; iter < opts.iters; ++iter) {
    const double exaggeration = iter < opts.exaggeration_iters ? opts.early_exaggeration : 1.0;
    const double momentum =
        iter < opts.momentum_switch_iter ? opts.momentum_initial : opts.momentum_final;

    double q_total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      num(i, i) = 0.0;
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double v = 1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
        num(i, j) = v;
        num(j, i) = v;
        q_total += 2.0 * v;
      }
    }

    grad.setZero();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        if (i == j) continue;
        const double q_ij = std::max(num(i, j) / q_total, 1e-300);
        const double mult = (exaggeration * p(i, j) - q_ij) * num(i, j);
        grad.row(i) += 4.0 * mult * (y.row(i) - y.row(j));
      }
    }

    for (Eigen::Index i = 0; i < n; ++i) {
      for (int k = 0; k < dims; ++k) {
        const bool same_sign = (grad(i, k) > 0.0) == (velocity(i, k) > 0.0);
        gains(i, k) = same_sign ? std::max(gains(i, k) * 0.8, 0.01) : gains(i, k) + 0.2;
        velocity(i, k) = momentum * velocity(i, k) - opts.learning_rate * gains(i, k) * grad(i, k);
        y(i, k) += velocity(i, k);
      }
    }
    y.rowwise() -= y.colwise().mean();
  }

  // Final KL divergence against the unexaggerated P.
  double q_total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      q_total += 2.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm());
  double kl = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j || p(i, j) <= 0.0) continue;
      const double q_ij =
          std::max(1.0 / (1.0 + (y.row(i) - y.row(j)).squaredNorm()) / q_total, 1e-300);
      kl += p(i, j) * std::log(std::max(p(i, j), p_floor) / q_ij);
    }
  }

  Projection result;
  result.method = ProjectionMethod::tsne;
  result.coords = y;
  result.kl_final = kl;
  return result;
}

}  // namespace voytop
