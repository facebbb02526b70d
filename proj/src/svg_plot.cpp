#include "autotune/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace autotune {

namespace {

constexpr double kPanelW = 320.0;
constexpr double kPanelH = 260.0;
constexpr double kPad = 10.0;
constexpr double kMarginLeft = 56.0;
constexpr double kMarginRight = 14.0;
constexpr double kMarginTop = 30.0;
constexpr double kMarginBottom = 42.0;
constexpr int kPanelsPerRow = 3;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf", "#aec7e8", "#ffbb78",
                          "#98df8a", "#ff9896", "#c5b0d5", "#c49c94"};
constexpr int kPaletteSize = 16;

struct PlotPoint {
  std::string method;
  double seconds;
  double error;
};

struct Panel {
  std::string dataset;
  std::string y_label;
  std::vector<PlotPoint> points;
};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string coord(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

std::string short_num(double v) {
  std::ostringstream out;
  out << std::setprecision(3) << v;
  return out.str();
}

std::string decade_label(int k) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(std::max(0, -k)) << std::pow(10.0, k);
  return out.str();
}

double nice_step(double range, int target_ticks) {
  const double raw = range / target_ticks;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step = 10.0;
  if (norm <= 1.5) {
    step = 1.0;
  } else if (norm <= 3.5) {
    step = 2.0;
  } else if (norm <= 7.5) {
    step = 5.0;
  }
  return step * mag;
}

}  // namespace

std::string render_benchmark_svg(const BenchReport& report) {
  const std::vector<AggregateRow> rows = report.aggregates();

  std::map<std::string, Panel> panels;
  std::map<std::string, int> method_color;
  for (const AggregateRow& row : rows) {
    double error;
    std::string y_label;
    if (row.metric == MetricKind::Accuracy) {
      error = 1.0 - row.mean_value;
      y_label = "error rate";
    } else if (row.metric == MetricKind::RMSE) {
      error = row.mean_value;
      y_label = "RMSE";
    } else {
      continue;
    }
    Panel& panel = panels[row.dataset];
    panel.dataset = row.dataset;
    panel.y_label = y_label;
    panel.points.push_back(
        {row.method, std::max(row.mean_seconds, 1e-4), error});
    method_color.emplace(row.method, 0);
  }
  if (panels.empty()) {
    throw std::runtime_error("nothing to plot: no successful trials");
  }
  {
    int next = 0;
    for (auto& [name, color] : method_color) color = next++;
  }

  const int n_panels = static_cast<int>(panels.size());
  const int cols = std::min(kPanelsPerRow, n_panels);
  const int panel_rows = (n_panels + kPanelsPerRow - 1) / kPanelsPerRow;
  const double legend_col_w = 230.0;
  const int legend_cols = std::max(
      1, static_cast<int>((cols * kPanelW) / legend_col_w));
  const int legend_rows =
      (static_cast<int>(method_color.size()) + legend_cols - 1) / legend_cols;
  const double legend_top = kPad + panel_rows * kPanelH + 6.0;
  const double width = 2 * kPad + cols * kPanelW;
  const double height = legend_top + legend_rows * 20.0 + kPad;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << coord(width) << "\" height=\"" << coord(height) << "\" viewBox=\"0 0 "
      << coord(width) << " " << coord(height) << "\">\n";
  svg << "<style>text{font-family:Helvetica,Arial,sans-serif;fill:#222;}"
         ".title{font-size:13px;font-weight:bold;}"
         ".tick{font-size:10px;}.axis{font-size:11px;}"
         ".legend{font-size:11px;}</style>\n";
  svg << "<rect width=\"" << coord(width) << "\" height=\"" << coord(height)
      << "\" fill=\"white\"/>\n";

  int panel_index = 0;
  for (const auto& [name, panel] : panels) {
    const double ox = kPad + (panel_index % kPanelsPerRow) * kPanelW;
    const double oy = kPad + (panel_index / kPanelsPerRow) * kPanelH;
    ++panel_index;
    const double x0 = ox + kMarginLeft;
    const double x1 = ox + kPanelW - kMarginRight;
    const double y0 = oy + kMarginTop;
    const double y1 = oy + kPanelH - kMarginBottom;

    double log_min = std::numeric_limits<double>::infinity();
    double log_max = -std::numeric_limits<double>::infinity();
    double err_max = 0.0;
    for (const PlotPoint& p : panel.points) {
      log_min = std::min(log_min, std::log10(p.seconds));
      log_max = std::max(log_max, std::log10(p.seconds));
      err_max = std::max(err_max, p.error);
    }
    int k_lo = static_cast<int>(std::floor(log_min));
    int k_hi = static_cast<int>(std::ceil(log_max));
    if (k_hi - k_lo < 1) {
      --k_lo;
      ++k_hi;
    }
    double y_max = err_max * 1.15;
    if (y_max <= 0.0) y_max = 0.1;

    auto x_of = [&](double seconds) {
      const double t = (std::log10(seconds) - k_lo) / (k_hi - k_lo);
      return x0 + t * (x1 - x0);
    };
    auto y_of = [&](double error) {
      return y1 - (error / y_max) * (y1 - y0);
    };

    svg << "<text class=\"title\" x=\"" << coord(ox + kPanelW / 2) << "\" y=\""
        << coord(oy + 18) << "\" text-anchor=\"middle\">"
        << xml_escape(panel.dataset) << "</text>\n";

    for (int k = k_lo; k <= k_hi; ++k) {
      const double x = x_of(std::pow(10.0, k));
      svg << "<line x1=\"" << coord(x) << "\" y1=\"" << coord(y0)
          << "\" x2=\"" << coord(x) << "\" y2=\"" << coord(y1)
          << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
      svg << "<text class=\"tick\" x=\"" << coord(x) << "\" y=\""
          << coord(y1 + 14) << "\" text-anchor=\"middle\">" << decade_label(k)
          << "</text>\n";
    }
    const double step = nice_step(y_max, 4);
    for (double tick = 0.0; tick <= y_max + 1e-12; tick += step) {
      const double y = y_of(tick);
      svg << "<line x1=\"" << coord(x0) << "\" y1=\"" << coord(y)
          << "\" x2=\"" << coord(x1) << "\" y2=\"" << coord(y)
          << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
      svg << "<text class=\"tick\" x=\"" << coord(x0 - 5) << "\" y=\""
          << coord(y + 3.5)
          << "\" text-anchor=\"end\">" << short_num(tick) << "</text>\n";
    }
    svg << "<rect x=\"" << coord(x0) << "\" y=\"" << coord(y0)
        << "\" width=\"" << coord(x1 - x0) << "\" height=\"" << coord(y1 - y0)
        << "\" fill=\"none\" stroke=\"#555\" stroke-width=\"1\"/>\n";
    svg << "<text class=\"axis\" x=\"" << coord((x0 + x1) / 2) << "\" y=\""
        << coord(oy + kPanelH - 10)
        << "\" text-anchor=\"middle\">tuning seconds</text>\n";
    svg << "<text class=\"axis\" transform=\"translate("
        << coord(ox + 14) << "," << coord((y0 + y1) / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">"
        << xml_escape(panel.y_label) << "</text>\n";

    for (const PlotPoint& p : panel.points) {
      const int color = method_color.at(p.method) % kPaletteSize;
      svg << "<circle class=\"marker\" cx=\"" << coord(x_of(p.seconds))
          << "\" cy=\"" << coord(y_of(p.error)) << "\" r=\"4.5\" fill=\""
          << kPalette[color]
          << "\" fill-opacity=\"0.85\" stroke=\"#333\" stroke-width=\"0.6\">"
          << "<title>" << xml_escape(p.method) << ": " << short_num(p.error)
          << " at " << short_num(p.seconds) << "s</title></circle>\n";
    }
  }

  int entry = 0;
  for (const auto& [name, color] : method_color) {
    const double x = kPad + (entry % legend_cols) * legend_col_w;
    const double y = legend_top + (entry / legend_cols) * 20.0 + 10.0;
    ++entry;
    svg << "<circle cx=\"" << coord(x + 8) << "\" cy=\"" << coord(y)
        << "\" r=\"4.5\" fill=\"" << kPalette[color % kPaletteSize]
        << "\" fill-opacity=\"0.85\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
    svg << "<text class=\"legend\" x=\"" << coord(x + 18) << "\" y=\""
        << coord(y + 3.5) << "\">" << xml_escape(name) << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace autotune
