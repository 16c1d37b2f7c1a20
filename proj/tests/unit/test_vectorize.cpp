#include <doctest.h>

#include <cmath>

#include "voytop/errors.hpp"
#include "voytop/vectorize.hpp"

using namespace voytop;

namespace {

Document doc(std::string id, std::vector<std::string> tokens) {
  return {id, id, std::move(tokens), SegmentationMode::page};
}

}  // namespace

TEST_CASE("build_vocabulary sorts and applies min_count") {
  std::vector<Document> docs = {doc("d1", {"a", "b"}), doc("d2", {"b"})};
  CHECK(build_vocabulary(docs, 1).terms == std::vector<std::string>{"a", "b"});
  CHECK(build_vocabulary(docs, 2).terms == std::vector<std::string>{"b"});
  CHECK_THROWS_AS(build_vocabulary(docs, 3), ArgumentError);
  CHECK_THROWS_AS(build_vocabulary({}, 1), ArgumentError);

  auto vocab = build_vocabulary(docs, 1);
  for (int i = 0; i < vocab.size(); ++i) CHECK(vocab.column_of(vocab.terms[i]) == i);
}

TEST_CASE("bow_matrix counts occurrences, ignores OOV") {
  std::vector<Document> docs = {doc("d1", {"a", "a", "b"}), doc("d2", {"zzz"})};
  auto vocab = build_vocabulary({doc("x", {"a", "b"})}, 1);
  std::vector<std::string> warnings;
  auto m = bow_matrix(docs, vocab, &warnings);
  CHECK(m.counts(0, 0) == 2.0);
  CHECK(m.counts(0, 1) == 1.0);
  CHECK(m.counts.row(1).sum() == 0.0);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("d2") != std::string::npos);
  CHECK_THROWS_AS(bow_matrix({}, vocab), ArgumentError);
}

TEST_CASE("bow row sums equal document token counts") {
  std::vector<Document> docs = {doc("d1", {"a", "b", "a", "c"}), doc("d2", {"c"})};
  auto vocab = build_vocabulary(docs, 1);
  auto m = bow_matrix(docs, vocab);
  CHECK(m.counts.row(0).sum() == 4.0);
  CHECK(m.counts.row(1).sum() == 1.0);
}

TEST_CASE("tfidf single-cell examples") {
  // N=10 docs, term with count 3 in one doc and df 1
  std::vector<Document> docs;
  docs.push_back(doc("d0", {"t", "t", "t", "x"}));
  for (int i = 1; i < 10; ++i) docs.push_back(doc("d" + std::to_string(i), {"x"}));
  auto vocab = build_vocabulary(docs, 1);
  auto w = tfidf_transform(bow_matrix(docs, vocab));
  const int t_col = vocab.column_of("t");
  const int x_col = vocab.column_of("x");
  CHECK(w.weights(0, t_col) == doctest::Approx(3.0).epsilon(1e-12));
  // term present in every document has weight 0 everywhere
  for (int d = 0; d < 10; ++d) CHECK(w.weights(d, x_col) == 0.0);
}

TEST_CASE("tfidf 3-document toy corpus matches the hand computation") {
  std::vector<Document> docs = {doc("d1", {"a", "a", "b"}), doc("d2", {"b", "c"}),
                                doc("d3", {"c"})};
  auto vocab = build_vocabulary(docs, 1);
  auto w = tfidf_transform(bow_matrix(docs, vocab));

  const double l3 = std::log10(3.0);
  const double l15 = std::log10(1.5);
  // hand evaluation: w = count * log10(N/df); df_a=1, df_b=2, df_c=2
  CHECK(w.weights(0, 0) == doctest::Approx(2.0 * l3).epsilon(1e-12));
  CHECK(w.weights(0, 1) == doctest::Approx(1.0 * l15).epsilon(1e-12));
  CHECK(w.weights(0, 2) == 0.0);
  CHECK(w.weights(1, 0) == 0.0);
  CHECK(w.weights(1, 1) == doctest::Approx(l15).epsilon(1e-12));
  CHECK(w.weights(1, 2) == doctest::Approx(l15).epsilon(1e-12));
  CHECK(w.weights(2, 0) == 0.0);
  CHECK(w.weights(2, 1) == 0.0);
  CHECK(w.weights(2, 2) == doctest::Approx(l15).epsilon(1e-12));
}

TEST_CASE("tfidf zero pattern equals count zero pattern plus df=N terms") {
  std::vector<Document> docs = {doc("d1", {"a", "b"}), doc("d2", {"a", "c"}),
                                doc("d3", {"a", "b", "c"})};
  auto vocab = build_vocabulary(docs, 1);
  auto counts = bow_matrix(docs, vocab);
  auto w = tfidf_transform(counts);
  const auto n = counts.counts.rows();
  for (Eigen::Index d = 0; d < n; ++d) {
    for (Eigen::Index t = 0; t < counts.counts.cols(); ++t) {
      const double df = (counts.counts.col(t).array() > 0.0).count();
      if (counts.counts(d, t) == 0.0 || df == static_cast<double>(n)) {
        CHECK(w.weights(d, t) == 0.0);
      } else {
        CHECK(w.weights(d, t) > 0.0);
      }
      CHECK(std::isfinite(w.weights(d, t)));
    }
  }
}

TEST_CASE("duplicating a document changes N and df consistently on recompute") {
  std::vector<Document> docs = {doc("d1", {"a", "a", "b"}), doc("d2", {"b", "c"})};
  auto vocab = build_vocabulary(docs, 1);
  auto w2 = tfidf_transform(bow_matrix(docs, vocab));

  auto docs3 = docs;
  docs3.push_back(doc("d2b", {"b", "c"}));
  auto w3 = tfidf_transform(bow_matrix(docs3, vocab));

  // direct evaluation of the formula at the new N/df
  CHECK(w3.weights(0, vocab.column_of("a")) ==
        doctest::Approx(2.0 * std::log10(3.0 / 1.0)).epsilon(1e-12));
  // c appears in d2 only before, in d2 and d2b after: log10(2/1) -> log10(3/2)
  CHECK(w2.weights(1, vocab.column_of("c")) == doctest::Approx(std::log10(2.0)).epsilon(1e-12));
  CHECK(w3.weights(1, vocab.column_of("c")) == doctest::Approx(std::log10(1.5)).epsilon(1e-12));
  // b sits in every document both times, so it zeroes out both times
  CHECK(w2.weights(0, vocab.column_of("b")) == 0.0);
  CHECK(w3.weights(0, vocab.column_of("b")) == 0.0);
}

TEST_CASE("matrix CSV export is byte-stable") {
  std::vector<Document> docs = {doc("d1", {"a", "b"}), doc("d2", {"b"})};
  auto vocab = build_vocabulary(docs, 1);
  auto counts = bow_matrix(docs, vocab);
  auto csv1 = matrix_to_csv(counts.counts, counts.doc_ids, counts.terms);
  auto csv2 = matrix_to_csv(counts.counts, counts.doc_ids, counts.terms);
  CHECK(csv1 == csv2);
  CHECK(csv1.substr(0, 10) == "doc_id,a,b");
}
