#ifndef VOYTOP_MCA_HPP
#define VOYTOP_MCA_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace voytop {

// Categorical observations: one value per variable per row.
struct CategoryTable {
  std::vector<std::string> row_ids;
  std::vector<std::string> variables;                 // ordered, e.g. hand, language, …
  std::vector<std::vector<std::string>> values;       // rows x variables

  void validate() const;  // throws on missing cells / shape mismatch
};

// Identifies a column of the indicator matrix.
struct CategoryColumn {
  std::string variable;
  std::string category;
};

struct IndicatorMatrix {
  Eigen::MatrixXd Z;  // N x J binary, Q ones per row
  std::vector<CategoryColumn> columns;
  std::vector<std::string> row_ids;
  int n_variables = 0;
};

struct McaModel {
  Eigen::MatrixXd row_coords;       // N x d principal coordinates
  Eigen::MatrixXd category_coords;  // J x d principal coordinates
  Eigen::VectorXd principal_inertias;  // d values, descending
  double total_inertia = 0.0;
  std::vector<std::string> row_ids;
  std::vector<CategoryColumn> columns;
};

// Column order: variable order, then category order (sorted). A variable
// with a single observed category is rejected (zero-variance column).
IndicatorMatrix build_indicator(const CategoryTable& table);

// Correspondence analysis of the indicator matrix: chi-square standardized
// residuals, truncated SVD, principal coordinates, inertias = sigma^2.
McaModel mca_fit(const IndicatorMatrix& indicator, int d = 2);

// For a category point, all other category points ranked by Euclidean
// distance in the d-dim principal space.
std::vector<std::pair<CategoryColumn, double>> nearest_categories(const McaModel& model,
                                                                  const std::string& variable,
                                                                  const std::string& category);

std::string category_coords_csv(const McaModel& model);
std::string row_coords_csv(const McaModel& model);
std::string inertia_csv(const McaModel& model);

}  // namespace voytop

#endif  // VOYTOP_MCA_HPP
