#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "pamab/types.hpp"

namespace oracle {

inline double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// E[clip(X, lo, hi)] for X ~ N(mu, var) by composite Simpson integration.
inline double clipped_gaussian_mean(double mu, double var, double lo, double hi) {
  if (var == 0.0) return std::min(std::max(mu, lo), hi);
  const double sd = std::sqrt(var);
  const double a = std::max(lo, mu - 12 * sd);
  const double b = std::min(hi, mu + 12 * sd);
  const int n = 20000;
  const double h = (b - a) / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * x * normal_pdf((x - mu) / sd) / sd;
  }
  double mass = s * h / 3.0;
  // Point masses at the clip bounds.
  mass += lo * 0.5 * std::erfc((mu - lo) / (sd * std::sqrt(2.0)));
  if (std::isfinite(hi)) mass += hi * 0.5 * std::erfc((hi - mu) / (sd * std::sqrt(2.0)));
  return mass;
}

inline bool brute_dominates(const pamab::Vec& u, const pamab::Vec& v) {
  if (u.empty()) return false;
  for (std::size_t d = 0; d < u.size(); ++d) {
    if (!(u[d] > v[d])) return false;
  }
  return true;
}

inline std::vector<int> brute_front(const std::vector<pamab::Vec>& vs) {
  std::vector<int> out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < vs.size(); ++j) dominated = dominated || brute_dominates(vs[j], vs[i]);
    if (!dominated) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace oracle
