#include "mthint/svg.hpp"

#include <algorithm>
#include <sstream>

namespace mthint {

namespace {

const char* kPalette[] = {"#4878a8", "#d1605e", "#6aa56e", "#e8b04c", "#8c6bb1", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v, int decimals = 3) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(decimals);
  ss << v;
  return ss.str();
}

}  // namespace

std::string render_grouped_bar_svg(const GroupedBarChart& chart) {
  const double margin_left = 60, margin_right = 30, margin_top = 50, margin_bottom = 70;
  const double group_width = std::max<size_t>(chart.series.size(), 1) * 34.0 + 26.0;
  const double plot_w = std::max<double>(chart.groups.size() * group_width, group_width);
  const double plot_h = 260;
  const double width = margin_left + plot_w + margin_right;
  const double height = margin_top + plot_h + margin_bottom + 24.0 * chart.series.size();
  const double y_max = chart.y_max > 0 ? chart.y_max : 1.0;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width, 0) << "\" height=\""
      << num(height, 0) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "  <title>" << escape(chart.title) << "</title>\n";
  svg << "  <text x=\"" << num(width / 2, 0) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << escape(chart.title) << "</text>\n";

  // y axis with a few gridlines
  for (int tick = 0; tick <= 4; ++tick) {
    double frac = tick / 4.0;
    double y = margin_top + plot_h * (1.0 - frac);
    svg << "  <line x1=\"" << num(margin_left, 1) << "\" y1=\"" << num(y, 1) << "\" x2=\""
        << num(margin_left + plot_w, 1) << "\" y2=\"" << num(y, 1)
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "  <text x=\"" << num(margin_left - 8, 1) << "\" y=\"" << num(y + 4, 1)
        << "\" text-anchor=\"end\">" << num(y_max * frac, 2) << "</text>\n";
  }
  if (!chart.y_label.empty()) {
    svg << "  <text x=\"14\" y=\"" << num(margin_top + plot_h / 2, 1)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << num(margin_top + plot_h / 2, 1) << ")\">" << escape(chart.y_label) << "</text>\n";
  }

  const double bar_w = 30.0;
  for (size_t g = 0; g < chart.groups.size(); ++g) {
    double group_x = margin_left + g * group_width + 13.0;
    for (size_t s = 0; s < chart.series.size(); ++s) {
      if (g >= chart.series[s].values.size() || !chart.series[s].values[g]) continue;
      double v = *chart.series[s].values[g];
      double h = plot_h * std::clamp(v / y_max, 0.0, 1.0);
      double x = group_x + s * 34.0;
      double y = margin_top + plot_h - h;
      svg << "  <rect x=\"" << num(x, 1) << "\" y=\"" << num(y, 1) << "\" width=\""
          << num(bar_w, 1) << "\" height=\"" << num(h, 1) << "\" fill=\""
          << kPalette[s % 6] << "\"/>\n";
      svg << "  <text x=\"" << num(x + bar_w / 2, 1) << "\" y=\"" << num(y - 4, 1)
          << "\" text-anchor=\"middle\" font-size=\"10\">" << num(v) << "</text>\n";
    }
    svg << "  <text x=\"" << num(group_x + chart.series.size() * 34.0 / 2 - 2, 1) << "\" y=\""
        << num(margin_top + plot_h + 18, 1) << "\" text-anchor=\"middle\">"
        << escape(chart.groups[g]) << "</text>\n";
  }

  // legend
  for (size_t s = 0; s < chart.series.size(); ++s) {
    double y = margin_top + plot_h + 40 + 20.0 * s;
    svg << "  <rect x=\"" << num(margin_left, 1) << "\" y=\"" << num(y - 10, 1)
        << "\" width=\"14\" height=\"14\" fill=\"" << kPalette[s % 6] << "\"/>\n";
    svg << "  <text x=\"" << num(margin_left + 20, 1) << "\" y=\"" << num(y + 2, 1) << "\">"
        << escape(chart.series[s].name) << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace mthint
