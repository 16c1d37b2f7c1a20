#include "voytop/factor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "voytop/errors.hpp"
#include "voytop/io.hpp"
#include "voytop/linalg.hpp"
#include "voytop/rng.hpp"

namespace voytop {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::lsa: return "lsa";
    case ModelKind::nmf: return "nmf";
    case ModelKind::lda: return "lda";
  }
  return "?";
}

DocTopicModel lsa_fit(const WeightMatrix& w, int k) {
  const auto n = w.weights.rows();
  const auto v = w.weights.cols();
  if (k < 1 || k > std::min(n, v))
    throw ArgumentError("lsa_fit: k=" + std::to_string(k) + " out of range [1," +
                        std::to_string(std::min(n, v)) + "]");
  if (w.weights.cwiseAbs().maxCoeff() == 0.0)
    throw NumericError("lsa_fit: degenerate input (all-zero weight matrix)");

  auto svd = linalg::truncated_svd(w.weights, k);
  DocTopicModel model;
  model.kind = ModelKind::lsa;
  model.k = k;
  model.doc_topic = svd.U * svd.S.asDiagonal();
  model.topic_term = svd.S.asDiagonal() * svd.V.transpose();
  model.doc_ids = w.doc_ids;
  model.vocab = w.terms;
  return model;
}

DocTopicModel nmf_fit(const WeightMatrix& w, int k, const NmfOptions& opts,
                      std::vector<double>* objective_log) {
  const auto n = w.weights.rows();
  const auto v = w.weights.cols();
  if (k < 1) throw ArgumentError("nmf_fit: k must be >= 1");
  if (w.weights.minCoeff() < 0.0)
    throw ArgumentError("nmf_fit: input matrix has negative entries");

  constexpr double eps = 1e-12;
  const double scale = std::sqrt(std::max(w.weights.mean(), eps) / k);

  SplitMix64 rng(opts.seed);
  Eigen::MatrixXd dt(n, k), tt(k, v);
  for (Eigen::Index i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) dt(i, j) = rng.next_double() * scale;
  for (int i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < v; ++j) tt(i, j) = rng.next_double() * scale;

  double prev_obj = (w.weights - dt * tt).squaredNorm();
  if (objective_log) objective_log->push_back(prev_obj);

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    // H <- H .* (W^T A) ./ (W^T W H)
    Eigen::MatrixXd numer_h = dt.transpose() * w.weights;
    Eigen::MatrixXd denom_h = (dt.transpose() * dt) * tt;
    tt = tt.cwiseProduct(numer_h.cwiseQuotient(denom_h.array().max(0.0).matrix() +
                                               Eigen::MatrixXd::Constant(k, v, eps)));
    // W <- W .* (A H^T) ./ (W H H^T)
    Eigen::MatrixXd numer_w = w.weights * tt.transpose();
    Eigen::MatrixXd denom_w = dt * (tt * tt.transpose());
    dt = dt.cwiseProduct(numer_w.cwiseQuotient(denom_w.array().max(0.0).matrix() +
                                               Eigen::MatrixXd::Constant(n, k, eps)));

    const double obj = (w.weights - dt * tt).squaredNorm();
    if (objective_log) objective_log->push_back(obj);
    const double rel = (prev_obj - obj) / std::max(prev_obj, eps);
    prev_obj = obj;
    if (rel >= 0.0 && rel < opts.tol) break;
  }

  DocTopicModel model;
  model.kind = ModelKind::nmf;
  model.k = k;
  model.seed = opts.seed;
  model.doc_topic = dt;
  model.topic_term = tt;
  model.doc_ids = w.doc_ids;
  model.vocab = w.terms;
  return model;
}

TopicAssignment assign_topics(const DocTopicModel& model) {
  TopicAssignment assignment;
  const bool use_abs = model.kind == ModelKind::lsa;
  for (Eigen::Index d = 0; d < model.doc_topic.rows(); ++d) {
    int best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < model.k; ++t) {
      double v = model.doc_topic(d, t);
      if (use_abs) v = std::abs(v);
      if (v > best_val) {  // strict: ties stay at the lowest index
        best_val = v;
        best = t;
      }
    }
    assignment[model.doc_ids[static_cast<std::size_t>(d)]] = best;
  }
  return assignment;
}

std::vector<std::vector<std::string>> top_terms(const DocTopicModel& model, int n) {
  if (n < 1) throw ArgumentError("top_terms: n must be >= 1");
  const bool use_abs = model.kind == ModelKind::lsa;
  const int v = static_cast<int>(model.topic_term.cols());
  const int take = std::min(n, v);

  std::vector<std::vector<std::string>> result;
  result.reserve(static_cast<std::size_t>(model.k));
  for (int t = 0; t < model.k; ++t) {
    std::vector<int> order(static_cast<std::size_t>(v));
    std::iota(order.begin(), order.end(), 0);
    auto weight = [&](int col) {
      double x = model.topic_term(t, col);
      return use_abs ? std::abs(x) : x;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return weight(a) > weight(b); });
    std::vector<std::string> terms;
    terms.reserve(static_cast<std::size_t>(take));
    for (int i = 0; i < take; ++i)
      terms.push_back(model.vocab[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])]);
    result.push_back(std::move(terms));
  }
  return result;
}

namespace {

std::string matrix_json(const Eigen::MatrixXd& m) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += io::format_real(m(i, j));
    }
    out += ']';
  }
  return out + "]";
}

std::string string_array_json(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += '"' + xs[i] + '"';
  }
  return out + "]";
}

}  // namespace

std::string model_to_json(const DocTopicModel& model) {
  std::string out = "{\n";
  out += "  \"kind\": \"" + to_string(model.kind) + "\",\n";
  out += "  \"k\": " + std::to_string(model.k) + ",\n";
  out += "  \"seed\": " + std::to_string(model.seed) + ",\n";
  out += "  \"doc_ids\": " + string_array_json(model.doc_ids) + ",\n";
  out += "  \"vocabulary\": " + string_array_json(model.vocab) + ",\n";
  out += "  \"doc_topic\": " + matrix_json(model.doc_topic) + ",\n";
  out += "  \"topic_term\": " + matrix_json(model.topic_term) + "\n";
  out += "}\n";
  return out;
}

}  // namespace voytop
