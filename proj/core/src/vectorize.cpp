#include "voytop/vectorize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "voytop/errors.hpp"
#include "voytop/io.hpp"

namespace voytop {

Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_count) {
  if (docs.empty()) throw ArgumentError("build_vocabulary: empty corpus");
  if (min_count < 1) throw ArgumentError("build_vocabulary: min_count must be >= 1");

  std::map<std::string, long> freq;
  for (const auto& d : docs)
    for (const auto& t : d.tokens) ++freq[t];

  Vocabulary vocab;
  for (const auto& [term, n] : freq)
    if (n >= min_count) vocab.terms.push_back(term);
  if (vocab.terms.empty()) throw ArgumentError("build_vocabulary: empty vocabulary");

  vocab.index.reserve(vocab.terms.size());
  for (int i = 0; i < vocab.size(); ++i) vocab.index.emplace(vocab.terms[i], i);
  return vocab;
}

CountMatrix bow_matrix(const std::vector<Document>& docs, const Vocabulary& vocab,
                       std::vector<std::string>* oov_warnings) {
  if (docs.empty()) throw ArgumentError("bow_matrix: empty document list");
  const int n = static_cast<int>(docs.size());
  const int v = vocab.size();

  CountMatrix m;
  m.counts = Eigen::MatrixXd::Zero(n, v);
  m.terms = vocab.terms;
  m.doc_ids.reserve(n);
  for (int d = 0; d < n; ++d) {
    m.doc_ids.push_back(docs[d].id);
    for (const auto& tok : docs[d].tokens) {
      int col = vocab.column_of(tok);
      if (col >= 0) m.counts(d, col) += 1.0;
    }
    if (oov_warnings && m.counts.row(d).sum() == 0.0)
      oov_warnings->push_back("document '" + docs[d].id +
                              "' contains only out-of-vocabulary tokens");
  }
  return m;
}

WeightMatrix tfidf_transform(const CountMatrix& counts, bool log_tf) {
  const auto n = counts.counts.rows();
  const auto v = counts.counts.cols();
  if (n < 1) throw ArgumentError("tfidf_transform: need at least one document");

  Eigen::VectorXd df = Eigen::VectorXd::Zero(v);
  for (Eigen::Index t = 0; t < v; ++t)
    df(t) = (counts.counts.col(t).array() > 0.0).count();

  WeightMatrix w;
  w.doc_ids = counts.doc_ids;
  w.terms = counts.terms;
  w.weights = Eigen::MatrixXd::Zero(n, v);
  for (Eigen::Index t = 0; t < v; ++t) {
    if (df(t) == 0.0) continue;  // term absent from every document
    const double idf = std::log10(static_cast<double>(n) / df(t));
    for (Eigen::Index d = 0; d < n; ++d) {
      const double c = counts.counts(d, t);
      if (c == 0.0) continue;
      const double tf = log_tf ? 1.0 + std::log10(c) : c;
      w.weights(d, t) = tf * idf;
    }
  }
  return w;
}

void normalize_rows(WeightMatrix& w) {
  for (Eigen::Index d = 0; d < w.weights.rows(); ++d) {
    const double norm = w.weights.row(d).norm();
    if (norm > 0.0) w.weights.row(d) /= norm;
  }
}

std::string matrix_to_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& doc_ids,
                          const std::vector<std::string>& terms) {
  std::string out = "doc_id";
  for (const auto& t : terms) out += "," + io::csv_field(t);
  out += '\n';
  for (Eigen::Index d = 0; d < m.rows(); ++d) {
    out += io::csv_field(doc_ids[static_cast<std::size_t>(d)]);
    for (Eigen::Index t = 0; t < m.cols(); ++t) out += "," + io::format_real(m(d, t));
    out += '\n';
  }
  return out;
}

}  // namespace voytop
