#ifndef VOYTOP_SVG_HPP
#define VOYTOP_SVG_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace voytop::svg {

struct ScatterPoint {
  double x = 0.0;
  double y = 0.0;
  int color_index = 0;   // into the fixed 8-color palette
  std::string label;     // empty = unlabeled marker
};

// 800x600 viewport, axis-free scatter with a legend of the named series.
// Hand-emitted so the toolkit carries no plotting dependency.
std::string scatter(const std::vector<ScatterPoint>& points,
                    const std::vector<std::string>& legend, const std::string& title);

const std::vector<std::string>& palette();

}  // namespace voytop::svg

#endif  // VOYTOP_SVG_HPP
