#ifndef VOYTOP_VECTORIZE_HPP
#define VOYTOP_VECTORIZE_HPP

#include <Eigen/Dense>
#include <string>
#include <unordered_map>
#include <vector>

#include "voytop/corpus.hpp"

namespace voytop {

// Lexicographically sorted term list with a term -> column bijection.
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(terms.size()); }
  int column_of(const std::string& term) const {
    auto it = index.find(term);
    return it == index.end() ? -1 : it->second;
  }
};

struct CountMatrix {
  Eigen::MatrixXd counts;  // N x V, nonnegative integers stored as doubles
  std::vector<std::string> doc_ids;
  std::vector<std::string> terms;
};

struct WeightMatrix {
  Eigen::MatrixXd weights;  // N x V tf-idf
  std::vector<std::string> doc_ids;
  std::vector<std::string> terms;
};

// Every token with corpus frequency >= min_count, sorted.
Vocabulary build_vocabulary(const std::vector<Document>& docs, int min_count = 1);

// Entry (d,t) = occurrences of term t in doc d; OOV tokens ignored.
// Documents that become all-zero rows are reported through `oov_warnings`
// when non-null.
CountMatrix bow_matrix(const std::vector<Document>& docs, const Vocabulary& vocab,
                       std::vector<std::string>* oov_warnings = nullptr);

// w_{t,d} = count(t,d) * log10(N / df_t). When log_tf is set the term
// frequency is damped to 1 + log10(count); off by default.
WeightMatrix tfidf_transform(const CountMatrix& counts, bool log_tf = false);

// Optional row L2 normalization, off by default in every pipeline preset.
void normalize_rows(WeightMatrix& w);

// First column doc_id, header row of terms, 12 significant digits.
std::string matrix_to_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& doc_ids,
                          const std::vector<std::string>& terms);

}  // namespace voytop

#endif  // VOYTOP_VECTORIZE_HPP
