#include "voytop/mca.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "voytop/errors.hpp"
#include "voytop/io.hpp"
#include "voytop/linalg.hpp"

namespace voytop {

void CategoryTable::validate() const {
  if (variables.empty()) throw ValidationError("category table: no variables");
  if (values.size() != row_ids.size())
    throw ValidationError("category table: row count mismatch");
  for (std::size_t r = 0; r < values.size(); ++r) {
    if (values[r].size() != variables.size())
      throw ValidationError("category table: row '" + row_ids[r] + "' has " +
                            std::to_string(values[r].size()) + " cells, expected " +
                            std::to_string(variables.size()));
    for (std::size_t v = 0; v < variables.size(); ++v)
      if (values[r][v].empty())
        throw ValidationError("category table: missing cell at row '" + row_ids[r] +
                              "', variable '" + variables[v] + "'");
  }
}

IndicatorMatrix build_indicator(const CategoryTable& table) {
  table.validate();
  const std::size_t n = table.row_ids.size();
  const std::size_t q = table.variables.size();

  std::vector<std::vector<std::string>> cats(q);
  for (std::size_t v = 0; v < q; ++v) {
    std::set<std::string> seen;
    for (std::size_t r = 0; r < n; ++r) seen.insert(table.values[r][v]);
    if (seen.size() < 2)
      throw ValidationError("mca: variable '" + table.variables[v] +
                            "' has a single observed category");
    cats[v].assign(seen.begin(), seen.end());
  }

  IndicatorMatrix ind;
  ind.row_ids = table.row_ids;
  ind.n_variables = static_cast<int>(q);
  std::map<std::pair<std::size_t, std::string>, Eigen::Index> col_of;
  for (std::size_t v = 0; v < q; ++v) {
    for (const auto& c : cats[v]) {
      col_of[{v, c}] = static_cast<Eigen::Index>(ind.columns.size());
      ind.columns.push_back({table.variables[v], c});
    }
  }

  ind.Z = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                static_cast<Eigen::Index>(ind.columns.size()));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t v = 0; v < q; ++v)
      ind.Z(static_cast<Eigen::Index>(r), col_of[{v, table.values[r][v]}]) = 1.0;
  return ind;
}

McaModel mca_fit(const IndicatorMatrix& indicator, int d) {
  const auto& z = indicator.Z;
  const auto n = z.rows();
  const auto j = z.cols();
  if (d < 1) throw ArgumentError("mca_fit: d must be >= 1");

  const double grand_total = z.sum();
  Eigen::MatrixXd p = z / grand_total;
  Eigen::VectorXd r = p.rowwise().sum();
  Eigen::VectorXd c = p.colwise().sum();

  Eigen::VectorXd r_isqrt = r.cwiseSqrt().cwiseInverse();
  Eigen::VectorXd c_isqrt = c.cwiseSqrt().cwiseInverse();

  Eigen::MatrixXd s =
      r_isqrt.asDiagonal() * (p - r * c.transpose()) * c_isqrt.asDiagonal();

  // Sum of all squared singular values; the trivial dimension is already
  // removed by the centering in S.
  const double total_inertia = s.squaredNorm();

  // Count positive inertias via the (J-Q)/Q identity bound; the practical
  // bound on retained dimensions is J - Q.
  const int max_dims = static_cast<int>(j) - indicator.n_variables;
  if (d > max_dims)
    throw ArgumentError("mca_fit: d=" + std::to_string(d) + " exceeds positive-inertia count " +
                        std::to_string(max_dims));

  auto svd = linalg::truncated_svd(s, d);

  McaModel model;
  model.row_coords = r_isqrt.asDiagonal() * svd.U * svd.S.asDiagonal();
  model.category_coords = c_isqrt.asDiagonal() * svd.V * svd.S.asDiagonal();
  model.principal_inertias = svd.S.array().square();
  model.total_inertia = total_inertia;
  model.columns = indicator.columns;
  model.row_ids = indicator.row_ids;
  (void)n;
  return model;
}

std::vector<std::pair<CategoryColumn, double>> nearest_categories(const McaModel& model,
                                                                  const std::string& variable,
                                                                  const std::string& category) {
  Eigen::Index self = -1;
  for (std::size_t i = 0; i < model.columns.size(); ++i)
    if (model.columns[i].variable == variable && model.columns[i].category == category)
      self = static_cast<Eigen::Index>(i);
  if (self < 0)
    throw ArgumentError("nearest_categories: unknown category " + variable + "=" + category);

  std::vector<std::pair<CategoryColumn, double>> ranked;
  for (Eigen::Index i = 0; i < model.category_coords.rows(); ++i) {
    if (i == self) continue;
    const double dist = (model.category_coords.row(i) - model.category_coords.row(self)).norm();
    ranked.emplace_back(model.columns[static_cast<std::size_t>(i)], dist);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second < b.second; });
  return ranked;
}

std::string category_coords_csv(const McaModel& model) {
  std::string out = "variable,category";
  for (Eigen::Index k = 0; k < model.category_coords.cols(); ++k)
    out += ",dim" + std::to_string(k + 1);
  out += '\n';
  for (Eigen::Index i = 0; i < model.category_coords.rows(); ++i) {
    const auto& col = model.columns[static_cast<std::size_t>(i)];
    out += io::csv_field(col.variable) + "," + io::csv_field(col.category);
    for (Eigen::Index k = 0; k < model.category_coords.cols(); ++k)
      out += "," + io::format_real(model.category_coords(i, k));
    out += '\n';
  }
  return out;
}

std::string row_coords_csv(const McaModel& model) {
  std::string out = "row_id";
  for (Eigen::Index k = 0; k < model.row_coords.cols(); ++k)
    out += ",dim" + std::to_string(k + 1);
  out += '\n';
  for (Eigen::Index i = 0; i < model.row_coords.rows(); ++i) {
    out += io::csv_field(model.row_ids[static_cast<std::size_t>(i)]);
    for (Eigen::Index k = 0; k < model.row_coords.cols(); ++k)
      out += "," + io::format_real(model.row_coords(i, k));
    out += '\n';
  }
  return out;
}

std::string inertia_csv(const McaModel& model) {
  std::string out = "dimension,principal_inertia,share_of_total\n";
  for (Eigen::Index k = 0; k < model.principal_inertias.size(); ++k) {
    out += std::to_string(k + 1) + "," + io::format_real(model.principal_inertias(k)) + "," +
           io::format_real(model.principal_inertias(k) / model.total_inertia) + '\n';
  }
  out += "total," + io::format_real(model.total_inertia) + ",1\n";
  return out;
}

}  // namespace voytop
