#include "pamab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pamab/linalg.hpp"

namespace pamab {

int optimal_arm(std::span<const double> preference_mean, const std::vector<ArmModel>& arms,
                std::span<const int> available) {
  if (available.empty()) throw std::invalid_argument("optimal_arm: empty availability set");
  int best = -1;
  double best_value = 0.0;
  for (int arm : available) {
    const double v = dot(preference_mean, arms.at(static_cast<std::size_t>(arm)).mean);
    if (best < 0 || v > best_value || (v == best_value && arm < best)) {
      best = arm;
      best_value = v;
    }
  }
  return best;
}

double regret_increment(std::span<const double> preference_mean, const std::vector<ArmModel>& arms,
                        std::span<const int> available, int chosen) {
  if (std::find(available.begin(), available.end(), chosen) == available.end()) {
    throw std::invalid_argument("regret_increment: chosen arm " + std::to_string(chosen) +
                                " is not available");
  }
  const int best = optimal_arm(preference_mean, arms, available);
  if (best == chosen) return 0.0;
  const auto& mu_best = arms[static_cast<std::size_t>(best)].mean;
  const auto& mu_chosen = arms[static_cast<std::size_t>(chosen)].mean;
  const double gap = dot(preference_mean, mu_best) - dot(preference_mean, mu_chosen);
  return std::max(gap, 0.0);
}

double AlgorithmSummary::final_se() const {
  return trials > 0 ? final_std / std::sqrt(static_cast<double>(trials)) : 0.0;
}

std::vector<AlgorithmSummary> aggregate(const std::vector<TrialRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const TrialRecord*>> groups;
  for (const auto& r : records) {
    auto& g = groups[r.algorithm];
    if (g.empty()) order.push_back(r.algorithm);
    if (!g.empty() && g.front()->cumulative.size() != r.cumulative.size()) {
      throw std::invalid_argument("aggregate: mismatched horizons for algorithm '" + r.algorithm + "'");
    }
    g.push_back(&r);
  }

  std::vector<AlgorithmSummary> out;
  for (const auto& name : order) {
    auto group = groups[name];
    // Trial order must not affect the floating-point sums.
    std::sort(group.begin(), group.end(),
              [](const TrialRecord* a, const TrialRecord* b) { return a->trial < b->trial; });
    const std::size_t T = group.front()->cumulative.size();
    const double n = static_cast<double>(group.size());

    AlgorithmSummary s;
    s.algorithm = name;
    s.trials = static_cast<int>(group.size());
    s.mean_curve.assign(T, 0.0);
    s.std_curve.assign(T, 0.0);
    for (std::size_t t = 0; t < T; ++t) {
      double sum = 0.0;
      for (const auto* r : group) sum += r->cumulative[t];
      const double mean = sum / n;
      double ss = 0.0;
      for (const auto* r : group) ss += (r->cumulative[t] - mean) * (r->cumulative[t] - mean);
      s.mean_curve[t] = mean;
      s.std_curve[t] = group.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    }
    if (T > 0) {
      s.final_mean = s.mean_curve.back();
      s.final_std = s.std_curve.back();
      s.final_min = s.final_max = group.front()->cumulative.back();
      for (const auto* r : group) {
        s.final_min = std::min(s.final_min, r->cumulative.back());
        s.final_max = std::max(s.final_max, r->cumulative.back());
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace pamab
