#include "voytop/svg.hpp"

#include <algorithm>
#include <cmath>

#include "voytop/io.hpp"

namespace voytop::svg {

const std::vector<std::string>& palette() {
  static const std::vector<std::string> colors = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  return colors;
}

std::string scatter(const std::vector<ScatterPoint>& points,
                    const std::vector<std::string>& legend, const std::string& title) {
  constexpr double width = 800.0, height = 600.0, margin = 50.0;

  double min_x = 0.0, max_x = 1.0, min_y = 0.0, max_y = 1.0;
  if (!points.empty()) {
    min_x = max_x = points[0].x;
    min_y = max_y = points[0].y;
    for (const auto& p : points) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
  }
  const double span_x = std::max(max_x - min_x, 1e-12);
  const double span_y = std::max(max_y - min_y, 1e-12);

  auto sx = [&](double x) { return margin + (x - min_x) / span_x * (width - 2 * margin); };
  // SVG y axis grows downward.
  auto sy = [&](double y) { return height - margin - (y - min_y) / span_y * (height - 2 * margin); };

  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
      "viewBox=\"0 0 800 600\">\n";
  out += "<rect width=\"800\" height=\"600\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + title + "</text>\n";

  for (const auto& p : points) {
    const auto& color = palette()[static_cast<std::size_t>(p.color_index) % palette().size()];
    out += "<circle cx=\"" + io::format_real(sx(p.x)) + "\" cy=\"" + io::format_real(sy(p.y)) +
           "\" r=\"4\" fill=\"" + color + "\" fill-opacity=\"0.8\"/>\n";
    if (!p.label.empty()) {
      out += "<text x=\"" + io::format_real(sx(p.x) + 6) + "\" y=\"" +
             io::format_real(sy(p.y) - 6) +
             "\" font-family=\"sans-serif\" font-size=\"10\">" + p.label + "</text>\n";
    }
  }

  for (std::size_t i = 0; i < legend.size(); ++i) {
    const double ly = 50.0 + 18.0 * static_cast<double>(i);
    out += "<circle cx=\"720\" cy=\"" + io::format_real(ly) + "\" r=\"5\" fill=\"" +
           palette()[i % palette().size()] + "\"/>\n";
    out += "<text x=\"730\" y=\"" + io::format_real(ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + legend[i] + "</text>\n";
  }

  out += "</svg>\n";
  return out;
}

}  // namespace voytop::svg
