#include "voytop/lda.hpp"

#include <cmath>
#include <string>

#include "voytop/errors.hpp"
#include "voytop/rng.hpp"

namespace voytop {

void LdaConfig::validate() const {
  if (k < 1) throw ArgumentError("lda: k must be >= 1");
  if (alpha <= 0.0 || beta <= 0.0) throw ArgumentError("lda: alpha and beta must be positive");
  if (burn_in < 0 || iterations <= burn_in)
    throw ArgumentError("lda: need iterations > burn_in >= 0");
  if (sample_every < 1) throw ArgumentError("lda: sample_every must be >= 1");
}

bool GibbsState::counts_consistent() const {
  auto n_dk2 = std::vector<std::vector<int>>(n_dk.size(), std::vector<int>(n_k.size(), 0));
  auto n_kw2 = std::vector<std::vector<int>>(n_k.size(), std::vector<int>(n_kw[0].size(), 0));
  auto n_k2 = std::vector<int>(n_k.size(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    ++n_dk2[static_cast<std::size_t>(doc_of[i])][static_cast<std::size_t>(z[i])];
    ++n_kw2[static_cast<std::size_t>(z[i])][static_cast<std::size_t>(word_of[i])];
    ++n_k2[static_cast<std::size_t>(z[i])];
  }
  return n_dk2 == n_dk && n_kw2 == n_kw && n_k2 == n_k;
}

DocTopicModel lda_fit(const CountMatrix& counts, const LdaConfig& config,
                      void (*sweep_hook)(const GibbsState&, int, void*), void* hook_ctx) {
  config.validate();
  const auto n_docs = counts.counts.rows();
  const auto n_terms = counts.counts.cols();
  if (n_docs == 0 || counts.counts.sum() <= 0.0)
    throw ArgumentError("lda_fit: empty corpus");
  if (counts.counts.minCoeff() < 0.0)
    throw ArgumentError("lda_fit: counts must be nonnegative");
  for (Eigen::Index d = 0; d < n_docs; ++d)
    for (Eigen::Index w = 0; w < n_terms; ++w)
      if (counts.counts(d, w) != std::floor(counts.counts(d, w)))
        throw ArgumentError("lda_fit: counts must be integers");

  const int k = config.k;
  const double v_beta = static_cast<double>(n_terms) * config.beta;

  GibbsState st;
  st.n_dk.assign(static_cast<std::size_t>(n_docs), std::vector<int>(static_cast<std::size_t>(k), 0));
  st.n_kw.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(n_terms), 0));
  st.n_k.assign(static_cast<std::size_t>(k), 0);

  SplitMix64 rng(config.seed);

  // Unroll counts into token positions; deterministic doc-major, term-major order.
  for (Eigen::Index d = 0; d < n_docs; ++d) {
    for (Eigen::Index w = 0; w < n_terms; ++w) {
      const int c = static_cast<int>(counts.counts(d, w));
      for (int r = 0; r < c; ++r) {
        const int topic = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k)));
        st.z.push_back(topic);
        st.doc_of.push_back(static_cast<int>(d));
        st.word_of.push_back(static_cast<int>(w));
        ++st.n_dk[static_cast<std::size_t>(d)][static_cast<std::size_t>(topic)];
        ++st.n_kw[static_cast<std::size_t>(topic)][static_cast<std::size_t>(w)];
        ++st.n_k[static_cast<std::size_t>(topic)];
      }
    }
  }

  Eigen::MatrixXd theta_sum = Eigen::MatrixXd::Zero(n_docs, k);
  Eigen::MatrixXd phi_sum = Eigen::MatrixXd::Zero(k, n_terms);
  int samples = 0;

  std::vector<double> cdf(static_cast<std::size_t>(k));
  for (int sweep = 0; sweep < config.iterations; ++sweep) {
    for (std::size_t i = 0; i < st.z.size(); ++i) {
      const auto d = static_cast<std::size_t>(st.doc_of[i]);
      const auto w = static_cast<std::size_t>(st.word_of[i]);
      const auto old_t = static_cast<std::size_t>(st.z[i]);
      --st.n_dk[d][old_t];
      --st.n_kw[old_t][w];
      --st.n_k[old_t];

      double total = 0.0;
      for (std::size_t t = 0; t < static_cast<std::size_t>(k); ++t) {
        const double p = (st.n_dk[d][t] + config.alpha) * (st.n_kw[t][w] + config.beta) /
                         (st.n_k[t] + v_beta);
        total += p;
        cdf[t] = total;
      }
      const double u = rng.next_double() * total;
      std::size_t new_t = 0;
      while (new_t + 1 < static_cast<std::size_t>(k) && cdf[new_t] < u) ++new_t;

      st.z[i] = static_cast<int>(new_t);
      ++st.n_dk[d][new_t];
      ++st.n_kw[new_t][w];
      ++st.n_k[new_t];
    }
    if (sweep_hook) sweep_hook(st, sweep, hook_ctx);

    if (sweep >= config.burn_in && (sweep - config.burn_in) % config.sample_every == 0) {
      for (Eigen::Index d = 0; d < n_docs; ++d) {
        double doc_total = 0.0;
        for (int t = 0; t < k; ++t)
          doc_total += st.n_dk[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)];
        for (int t = 0; t < k; ++t)
          theta_sum(d, t) +=
              (st.n_dk[static_cast<std::size_t>(d)][static_cast<std::size_t>(t)] + config.alpha) /
              (doc_total + k * config.alpha);
      }
      for (int t = 0; t < k; ++t)
        for (Eigen::Index w = 0; w < n_terms; ++w)
          phi_sum(t, w) =
              phi_sum(t, w) +
              (st.n_kw[static_cast<std::size_t>(t)][static_cast<std::size_t>(w)] + config.beta) /
                  (st.n_k[static_cast<std::size_t>(t)] + v_beta);
      ++samples;
    }
  }

  DocTopicModel model;
  model.kind = ModelKind::lda;
  model.k = k;
  model.seed = config.seed;
  model.doc_topic = theta_sum / samples;
  model.topic_term = phi_sum / samples;
  model.doc_ids = counts.doc_ids;
  model.vocab = counts.terms;

  // Renormalize away the accumulated float drift so rows sum to 1.
  for (Eigen::Index d = 0; d < model.doc_topic.rows(); ++d)
    model.doc_topic.row(d) /= model.doc_topic.row(d).sum();
  for (Eigen::Index t = 0; t < model.topic_term.rows(); ++t)
    model.topic_term.row(t) /= model.topic_term.row(t).sum();
  return model;
}

double perplexity(const DocTopicModel& model, const CountMatrix& counts) {
  if (model.vocab != counts.terms)
    throw ArgumentError("perplexity: model and counts vocabularies differ");
  const double total = counts.counts.sum();
  if (total <= 0.0) throw ArgumentError("perplexity: empty counts");

  double log_lik = 0.0;
  for (Eigen::Index d = 0; d < counts.counts.rows(); ++d) {
    for (Eigen::Index w = 0; w < counts.counts.cols(); ++w) {
      const double c = counts.counts(d, w);
      if (c == 0.0) continue;
      double p = 0.0;
      for (int t = 0; t < model.k; ++t) p += model.doc_topic(d, t) * model.topic_term(t, w);
      log_lik += c * std::log(p);
    }
  }
  return std::exp(-log_lik / total);
}

}  // namespace voytop
