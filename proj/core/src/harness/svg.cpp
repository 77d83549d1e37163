#include "manip/harness/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace manip {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

void write_svg_chart(const std::vector<SvgSeries>& series,
                     const SvgChartOptions& options, const std::string& path) {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const SvgSeries& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin) ymax = ymin + 1.0;

  int w = options.width, h = options.height;
  double ml = 70, mr = 150, mt = 40, mb = 55;  // margins
  double pw = w - ml - mr, ph = h - mt - mb;
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
  auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
      << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
      << "\">\n";
  out << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  if (!options.title.empty()) {
    out << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"16\" font-family=\"sans-serif\">" << options.title
        << "</text>\n";
  }
  // Axes.
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << mt + ph << "\" stroke=\"black\"/>\n";
  // Ticks.
  int ticks = 5;
  for (int i = 0; i <= ticks; ++i) {
    double fx = xmin + (xmax - xmin) * i / ticks;
    double fy = ymin + (ymax - ymin) * i / ticks;
    out << "<line x1=\"" << px(fx) << "\" y1=\"" << mt + ph << "\" x2=\""
        << px(fx) << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << px(fx) << "\" y=\"" << mt + ph + 20
        << "\" text-anchor=\"middle\" font-size=\"11\" "
        << "font-family=\"sans-serif\">" << fmt(fx) << "</text>\n";
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml
        << "\" y2=\"" << py(fy) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-size=\"11\" "
        << "font-family=\"sans-serif\">" << fmt(fy) << "</text>\n";
  }
  // Axis labels.
  if (!options.x_label.empty()) {
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << h - 12
        << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "font-family=\"sans-serif\">" << options.x_label << "</text>\n";
  }
  if (!options.y_label.empty()) {
    out << "<text x=\"18\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "font-family=\"sans-serif\" transform=\"rotate(-90 18 "
        << mt + ph / 2 << ")\">" << options.y_label << "</text>\n";
  }
  // Series polylines + legend.
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < series[s].x.size(); ++i) {
      if (!std::isfinite(series[s].x[i]) || !std::isfinite(series[s].y[i])) {
        continue;
      }
      out << px(series[s].x[i]) << "," << py(series[s].y[i]) << " ";
    }
    out << "\"/>\n";
    double ly = mt + 14 + 18.0 * s;
    out << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly << "\" x2=\""
        << ml + pw + 32 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << ml + pw + 38 << "\" y=\"" << ly + 4
        << "\" font-size=\"11\" font-family=\"sans-serif\">"
        << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

void plot_csv(const std::string& csv_path, const std::string& svg_path,
              const std::string& title) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("cannot open csv: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty csv: " + csv_path);
  }
  std::vector<std::string> headers;
  {
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) headers.push_back(cell);
  }
  if (headers.size() < 2) {
    throw std::runtime_error("csv needs at least two columns: " + csv_path);
  }
  std::vector<SvgSeries> series(headers.size() - 1);
  for (size_t i = 1; i < headers.size(); ++i) series[i - 1].label = headers[i];
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> row;
    bool ok = true;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        ok = false;
        break;
      }
    }
    if (!ok || row.size() != headers.size()) continue;  // skip non-numeric rows
    for (size_t i = 1; i < row.size(); ++i) {
      series[i - 1].x.push_back(row[0]);
      series[i - 1].y.push_back(row[i]);
    }
  }
  SvgChartOptions options;
  options.title = title.empty() ? csv_path : title;
  options.x_label = headers[0];
  write_svg_chart(series, options, svg_path);
}

}  // namespace manip
