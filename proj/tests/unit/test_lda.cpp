#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "voytop/errors.hpp"
#include "voytop/lda.hpp"
#include "voytop/rng.hpp"

using namespace voytop;

namespace {

CountMatrix make_counts(const Eigen::MatrixXd& m) {
  CountMatrix c;
  c.counts = m;
  for (Eigen::Index i = 0; i < m.rows(); ++i) c.doc_ids.push_back("d" + std::to_string(i));
  for (Eigen::Index j = 0; j < m.cols(); ++j) c.terms.push_back("t" + std::to_string(j));
  return c;
}

}  // namespace

TEST_CASE("LdaConfig validation") {
  LdaConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.burn_in = 1000;  // no post-burn-in samples left
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("lda k=1 matches the analytic single-topic posterior") {
  Eigen::MatrixXd m(2, 3);
  m << 2, 1, 0, 0, 1, 3;
  auto c = make_counts(m);
  LdaConfig cfg;
  cfg.k = 1;
  cfg.iterations = 20;
  cfg.burn_in = 10;
  cfg.sample_every = 1;
  cfg.seed = 1;
  auto model = lda_fit(c, cfg);

  // with one topic the counts never move; phi is the smoothed corpus
  // distribution and every theta row is exactly 1
  const double V = 3.0, total = 7.0, beta = cfg.beta;
  for (int w = 0; w < 3; ++w) {
    const double expected = (m.col(w).sum() + beta) / (total + V * beta);
    CHECK(model.topic_term(0, w) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(model.doc_topic(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.doc_topic(1, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gibbs count tables stay consistent with the assignment vector") {
  SplitMix64 rng(9);
  Eigen::MatrixXd m(8, 12);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = static_cast<double>(rng.next_below(4));
  auto c = make_counts(m);

  LdaConfig cfg;
  cfg.k = 3;
  cfg.iterations = 30;
  cfg.burn_in = 10;
  cfg.sample_every = 5;
  cfg.seed = 2;

  static int checked = 0;
  checked = 0;
  auto hook = [](const GibbsState& state, int, void*) {
    CHECK(state.counts_consistent());
    ++checked;
  };
  lda_fit(c, cfg, hook, nullptr);
  CHECK(checked == cfg.iterations);
}

TEST_CASE("lda theta and phi rows are distributions") {
  SplitMix64 rng(4);
  Eigen::MatrixXd m(6, 10);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = static_cast<double>(rng.next_below(5));
  LdaConfig cfg;
  cfg.k = 4;
  cfg.iterations = 40;
  cfg.burn_in = 20;
  cfg.sample_every = 2;
  cfg.seed = 3;
  auto model = lda_fit(make_counts(m), cfg);
  for (Eigen::Index d = 0; d < model.doc_topic.rows(); ++d) {
    CHECK(model.doc_topic.row(d).sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(model.doc_topic.row(d).minCoeff() >= 0.0);
  }
  for (int t = 0; t < cfg.k; ++t) {
    CHECK(model.topic_term.row(t).sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(model.topic_term.row(t).minCoeff() > 0.0);  // beta-smoothed
  }
}

TEST_CASE("lda is deterministic for a fixed seed") {
  Eigen::MatrixXd m(4, 6);
  m << 3, 1, 0, 0, 2, 1, 0, 4, 1, 1, 0, 0, 1, 0, 3, 2, 0, 1, 0, 0, 1, 1, 4, 2;
  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 30;
  cfg.burn_in = 10;
  cfg.sample_every = 2;
  cfg.seed = 11;
  auto a = lda_fit(make_counts(m), cfg);
  auto b = lda_fit(make_counts(m), cfg);
  CHECK(a.doc_topic == b.doc_topic);
  CHECK(a.topic_term == b.topic_term);
}

TEST_CASE("lda separates two disjoint vocabularies") {
  // 20 docs, 10 draw only from terms 0..4, 10 only from terms 5..9
  SplitMix64 rng(6);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(20, 10);
  for (int d = 0; d < 20; ++d) {
    const int base = d < 10 ? 0 : 5;
    for (int n = 0; n < 40; ++n) m(d, base + static_cast<int>(rng.next_below(5))) += 1.0;
  }
  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 200;
  cfg.burn_in = 100;
  cfg.sample_every = 5;
  cfg.seed = 7;
  auto model = lda_fit(make_counts(m), cfg);

  int recovered = 0;
  const int topic_of_first = model.doc_topic(0, 0) > model.doc_topic(0, 1) ? 0 : 1;
  for (int d = 0; d < 20; ++d) {
    const int expect = d < 10 ? topic_of_first : 1 - topic_of_first;
    if (model.doc_topic(d, expect) >= 0.8) ++recovered;
  }
  CHECK(recovered >= 18);
}

TEST_CASE("perplexity of the uniform model equals the vocabulary size") {
  Eigen::MatrixXd m(2, 4);
  m << 1, 2, 0, 1, 3, 0, 1, 1;
  auto c = make_counts(m);
  DocTopicModel model;
  model.kind = ModelKind::lda;
  model.k = 1;
  model.doc_ids = c.doc_ids;
  model.vocab = c.terms;
  model.doc_topic = Eigen::MatrixXd::Ones(2, 1);
  model.topic_term = Eigen::MatrixXd::Constant(1, 4, 0.25);
  CHECK(perplexity(model, c) == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("fitted perplexity beats the uniform baseline") {
  SplitMix64 rng(14);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(10, 8);
  for (int d = 0; d < 10; ++d) {
    const int base = d % 2 == 0 ? 0 : 4;
    for (int n = 0; n < 30; ++n) m(d, base + static_cast<int>(rng.next_below(4))) += 1.0;
  }
  auto c = make_counts(m);
  LdaConfig cfg;
  cfg.k = 2;
  cfg.iterations = 100;
  cfg.burn_in = 50;
  cfg.sample_every = 5;
  cfg.seed = 5;
  auto model = lda_fit(c, cfg);
  CHECK(perplexity(model, c) < 8.0);
}

TEST_CASE("lda argument errors") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 3);
  LdaConfig cfg;
  cfg.iterations = 20;
  cfg.burn_in = 10;
  CHECK_THROWS_AS(lda_fit(make_counts(m), cfg), ArgumentError);  // empty corpus
  Eigen::MatrixXd frac = Eigen::MatrixXd::Ones(2, 3);
  frac(0, 0) = 0.5;
  CHECK_THROWS_AS(lda_fit(make_counts(frac), cfg), ArgumentError);  // non-integer counts
}
