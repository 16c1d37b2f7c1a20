#ifndef VOYTOP_PROJECT_HPP
#define VOYTOP_PROJECT_HPP

#include <Eigen/Dense>
#include <cstdint>

namespace voytop {

enum class ProjectionMethod { pca, tsne };

struct Projection {
  Eigen::MatrixXd coords;  // N x dims
  ProjectionMethod method = ProjectionMethod::pca;
  Eigen::VectorXd explained_variance;  // pca only, shares of total variance
  double kl_final = 0.0;               // tsne only
};

struct TsneOptions {
  double perplexity = 10.0;
  std::uint64_t seed = 0;
  int iters = 1000;
  double learning_rate = 100.0;
  double early_exaggeration = 12.0;
  int exaggeration_iters = 250;
  double momentum_initial = 0.5;
  double momentum_final = 0.8;
  int momentum_switch_iter = 250;
};

// Mean-centers columns, projects onto the top eigenvectors of the
// covariance matrix.
Projection pca_project(const Eigen::MatrixXd& x, int dims = 2);

// Exact t-SNE: per-point Gaussian bandwidths by binary search on the
// conditional entropy, symmetrized P, Student-t affinities, gradient
// descent with momentum and early exaggeration.
Projection tsne_project(const Eigen::MatrixXd& x, int dims, const TsneOptions& opts);

// Exposed for the entropy-calibration contract tests: the symmetric,
// normalized joint affinity matrix P.
Eigen::MatrixXd tsne_affinities(const Eigen::MatrixXd& x, double perplexity);

}  // namespace voytop

#endif  // VOYTOP_PROJECT_HPP
