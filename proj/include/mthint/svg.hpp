#pragma once

#include <optional>
#include <string>
#include <vector>

namespace mthint {

// Grouped bar chart data: one group per x position, one bar per series.
// Missing values (nullopt) leave a gap.
struct BarSeries {
  std::string name;
  std::vector<std::optional<double>> values;  // one per group
};

struct GroupedBarChart {
  std::string title;
  std::string y_label;
  std::vector<std::string> groups;
  std::vector<BarSeries> series;
  double y_max = 1.0;
};

// Plain template-based SVG; every bar carries its numeric value as text so
// the chart stays auditable without a renderer.
std::string render_grouped_bar_svg(const GroupedBarChart& chart);

}  // namespace mthint
