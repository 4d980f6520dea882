#include "pamab/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string_view>

namespace pamab {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 80;
constexpr double kRight = 180;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr std::size_t kMaxPoints = 500;

constexpr std::array<std::string_view, 10> kPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  if (std::abs(v) >= 1000 || v == std::floor(v)) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.3g", v);
  }
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Rounds up to 1, 2 or 5 times a power of ten.
double nice_ceiling(double v) {
  if (!(v > 0.0)) return 1.0;
  const double p = std::pow(10.0, std::floor(std::log10(v)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * p >= v) return m * p;
  }
  return 10.0 * p;
}

struct Frame {
  double x_max;
  double y_max;
  double px(double x) const { return kLeft + (x / x_max) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y / y_max) * (kHeight - kTop - kBottom); }
};

std::string header(const ChartLabels& labels) {
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
       num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" + escape(labels.title) + "</text>\n";
  return s;
}

std::string axes(const Frame& f, const ChartLabels& labels, bool numeric_x) {
  std::string s;
  const double x0 = f.px(0), x1 = f.px(f.x_max), y0 = f.py(0), y1 = f.py(f.y_max);
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) + "\" y2=\"" + num(y0) + "\"/>\n";
  s += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x0) + "\" y2=\"" + num(y1) + "\"/>\n";
  s += "</g>\n<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int k = 0; k <= 5; ++k) {
    const double yv = f.y_max * k / 5.0;
    s += "<text x=\"" + num(x0 - 6) + "\" y=\"" + num(f.py(yv) + 4) + "\" text-anchor=\"end\">" +
         tick_label(yv) + "</text>\n";
    if (numeric_x) {
      const double xv = f.x_max * k / 5.0;
      s += "<text x=\"" + num(f.px(xv)) + "\" y=\"" + num(y0 + 16) + "\" text-anchor=\"middle\">" +
           tick_label(xv) + "</text>\n";
    }
  }
  s += "<text x=\"" + num((x0 + x1) / 2) + "\" y=\"" + num(kHeight - 18) +
       "\" text-anchor=\"middle\" font-size=\"13\">" + escape(labels.x_axis) + "</text>\n";
  s += "<text x=\"20\" y=\"" + num((y0 + y1) / 2) + "\" text-anchor=\"middle\" font-size=\"13\" "
       "transform=\"rotate(-90 20 " + num((y0 + y1) / 2) + ")\">" + escape(labels.y_axis) + "</text>\n";
  s += "</g>\n";
  return s;
}

std::string legend(const std::vector<std::string>& names) {
  std::string s = "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    const double x = kWidth - kRight + 15;
    s += "<rect x=\"" + num(x) + "\" y=\"" + num(y - 9) + "\" width=\"14\" height=\"10\" fill=\"" +
         std::string(kPalette[i % kPalette.size()]) + "\"/>\n";
    s += "<text x=\"" + num(x + 20) + "\" y=\"" + num(y) + "\">" + escape(names[i]) + "</text>\n";
  }
  s += "</g>\n";
  return s;
}

}  // namespace

std::string render_line_chart(const std::vector<LineSeries>& series, const ChartLabels& labels) {
  std::size_t length = 0;
  double y_max = 0.0;
  for (const auto& s : series) {
    length = std::max(length, s.y.size());
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const double b = i < s.band.size() ? s.band[i] : 0.0;
      if (std::isfinite(s.y[i] + b)) y_max = std::max(y_max, s.y[i] + b);
    }
  }
  const Frame f{static_cast<double>(std::max<std::size_t>(length, 1)), nice_ceiling(y_max)};
  std::string out = header(labels);
  out += axes(f, labels, true);

  const auto stride = [&](std::size_t n) { return std::max<std::size_t>(1, (n + kMaxPoints - 1) / kMaxPoints); };
  std::vector<std::string> names;
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    names.push_back(s.label);
    if (s.y.empty()) continue;
    const std::string colour(kPalette[k % kPalette.size()]);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < s.y.size(); i += stride(s.y.size())) idx.push_back(i);
    if (idx.back() != s.y.size() - 1) idx.push_back(s.y.size() - 1);

    if (!s.band.empty()) {
      std::string pts;
      for (std::size_t i : idx) {
        pts += num(f.px(static_cast<double>(i + 1))) + "," + num(f.py(s.y[i] + s.band[i])) + " ";
      }
      for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        pts += num(f.px(static_cast<double>(*it + 1))) + "," +
               num(f.py(std::max(0.0, s.y[*it] - s.band[*it]))) + " ";
      }
      pts.pop_back();
      out += "<polygon points=\"" + pts + "\" fill=\"" + colour + "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    }
    std::string pts;
    for (std::size_t i : idx) {
      pts += num(f.px(static_cast<double>(i + 1))) + "," + num(f.py(s.y[i])) + " ";
    }
    pts.pop_back();
    out += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.5\"/>\n";
  }
  out += legend(names);
  out += "</svg>\n";
  return out;
}

std::string render_regret_chart(const std::vector<AlgorithmSummary>& summaries,
                                const std::string& title) {
  std::vector<LineSeries> series;
  for (const auto& s : summaries) series.push_back({s.algorithm, s.mean_curve, s.std_curve});
  return render_line_chart(series, {title, "round", "cumulative regret"});
}

std::string render_bar_chart(const std::vector<BarGroup>& groups,
                             const std::vector<std::string>& series_names,
                             const ChartLabels& labels) {
  double y_max = 0.0;
  for (const auto& g : groups) {
    for (double v : g.values) {
      if (std::isfinite(v)) y_max = std::max(y_max, v);
    }
  }
  const Frame f{static_cast<double>(std::max<std::size_t>(groups.size(), 1)), nice_ceiling(y_max)};
  std::string out = header(labels);
  out += axes(f, labels, false);
  const double group_width = f.px(1) - f.px(0);
  const double bar_width = 0.8 * group_width / static_cast<double>(std::max<std::size_t>(series_names.size(), 1));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double left = f.px(static_cast<double>(g)) + 0.1 * group_width;
    for (std::size_t k = 0; k < groups[g].values.size(); ++k) {
      const double v = groups[g].values[k];
      const double top = f.py(v);
      out += "<rect x=\"" + num(left + bar_width * static_cast<double>(k)) + "\" y=\"" + num(top) +
             "\" width=\"" + num(bar_width) + "\" height=\"" + num(f.py(0) - top) + "\" fill=\"" +
             std::string(kPalette[k % kPalette.size()]) + "\"/>\n";
    }
    out += "<text x=\"" + num(f.px(g + 0.5)) + "\" y=\"" + num(f.py(0) + 16) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
           escape(groups[g].label) + "</text>\n";
  }
  out += legend(series_names);
  out += "</svg>\n";
  return out;
}

}  // namespace pamab
