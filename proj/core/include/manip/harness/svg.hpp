#ifndef MANIP_HARNESS_SVG_HPP_
#define MANIP_HARNESS_SVG_HPP_

#include <string>
#include <vector>

namespace manip {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct SvgChartOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 800;
  int height = 500;
};

// Simple polyline line chart with axes, ticks, and a legend.
void write_svg_chart(const std::vector<SvgSeries>& series,
                     const SvgChartOptions& options, const std::string& path);

// Renders a CSV (first column = x, every other numeric column = one series,
// headers as labels) to an SVG chart.
void plot_csv(const std::string& csv_path, const std::string& svg_path,
              const std::string& title = "");

}  // namespace manip

#endif  // MANIP_HARNESS_SVG_HPP_
