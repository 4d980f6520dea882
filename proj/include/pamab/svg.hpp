#pragma once

#include <string>
#include <vector>

#include "pamab/metrics.hpp"

namespace pamab {

struct LineSeries {
  std::string label;
  Vec y;     // y[i] plotted at x = i + 1
  Vec band;  // optional +-band half-width, same length as y
};

struct ChartLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

// Deterministic SVG line chart with shaded bands and a legend.
std::string render_line_chart(const std::vector<LineSeries>& series, const ChartLabels& labels);

// Mean cumulative-regret curve per algorithm with a +-1 std band.
std::string render_regret_chart(const std::vector<AlgorithmSummary>& summaries,
                                const std::string& title = "Cumulative regret");

struct BarGroup {
  std::string label;  // x category
  std::vector<double> values;
};

// Grouped bars: one group per category, one bar per series name.
std::string render_bar_chart(const std::vector<BarGroup>& groups,
                             const std::vector<std::string>& series_names,
                             const ChartLabels& labels);

}  // namespace pamab
