#ifndef VOYTOP_FACTOR_HPP
#define VOYTOP_FACTOR_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "voytop/vectorize.hpp"

namespace voytop {

enum class ModelKind { lsa, nmf, lda };

std::string to_string(ModelKind kind);

struct DocTopicModel {
  ModelKind kind = ModelKind::nmf;
  int k = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXd doc_topic;   // N x k
  Eigen::MatrixXd topic_term;  // k x V
  std::vector<std::string> doc_ids;
  std::vector<std::string> vocab;
};

// doc_id -> topic index in [0, k)
using TopicAssignment = std::map<std::string, int>;

struct NmfOptions {
  std::uint64_t seed = 0;
  int max_iter = 500;
  double tol = 1e-6;  // relative objective decrease
};

// doc_topic = U diag(S), topic_term = diag(S) V^T from the rank-k SVD.
DocTopicModel lsa_fit(const WeightMatrix& w, int k);

// Multiplicative updates for the Frobenius objective. `objective_log`,
// when non-null, receives ||W - doc_topic*topic_term||_F^2 per iteration.
DocTopicModel nmf_fit(const WeightMatrix& w, int k, const NmfOptions& opts = {},
                      std::vector<double>* objective_log = nullptr);

// Argmax per doc_topic row; absolute values for lsa (SVD coordinates are
// sign-indefinite); ties break toward the lowest topic index.
TopicAssignment assign_topics(const DocTopicModel& model);

// Per topic, the n heaviest terms (absolute weight for lsa), descending;
// ties break by vocabulary order.
std::vector<std::vector<std::string>> top_terms(const DocTopicModel& model, int n);

// JSON export: kind, k, seed, factors (12 significant digits), ids, vocab.
std::string model_to_json(const DocTopicModel& model);

}  // namespace voytop

#endif  // VOYTOP_FACTOR_HPP
