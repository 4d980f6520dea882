#include "pamab/wls_demo.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "pamab/env.hpp"
#include "pamab/estimators.hpp"
#include "pamab/linalg.hpp"
#include "pamab/rng.hpp"

namespace pamab {

namespace {

struct Sample {
  Vec reward;
  double overall;
};

std::vector<Sample> draw_samples(const std::vector<std::pair<const ArmModel*, int>>& plan,
                                 const UserModel& user, RandomStream& rewards,
                                 RandomStream& preferences) {
  std::vector<Sample> out;
  for (const auto& [arm, count] : plan) {
    for (int k = 0; k < count; ++k) {
      Vec r = draw_reward(*arm, rewards);
      const Vec c = draw_preference(user, preferences);
      const double g = overall_reward(c, r);
      out.push_back({std::move(r), g});
    }
  }
  return out;
}

double error_to(const Vec& estimate, const Vec& truth) {
  Vec diff = estimate;
  for (std::size_t d = 0; d < diff.size(); ++d) diff[d] -= truth[d];
  return norm2(diff);
}

Vec wls_estimate(const std::vector<Sample>& samples, const WlsDemoOptions& o) {
  GramState state(static_cast<int>(o.preference_mean.size()), o.wls_lambda, o.wls_omega);
  for (const auto& s : samples) {
    if (norm2(s.reward) > 0.0) state.update(s.reward, s.overall);
  }
  return wls_solve(state).value;
}

Vec ols_estimate(const std::vector<Sample>& samples, const WlsDemoOptions& o) {
  std::vector<std::pair<Vec, double>> pairs;
  for (const auto& s : samples) pairs.emplace_back(s.reward, s.overall);
  return ols_solve(pairs, o.ols_lambda);
}

std::pair<double, double> mean_std(const Vec& xs) {
  double m = 0.0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return {m, xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0};
}

}  // namespace

const WlsDemoCell& WlsDemoResult::cell(const std::string& estimator, int samples) const {
  for (const auto& c : cells) {
    if (c.estimator == estimator && c.samples == samples) return c;
  }
  throw std::out_of_range("WlsDemoResult: no cell " + estimator + "/" + std::to_string(samples));
}

WlsDemoResult run_wls_demo(const WlsDemoOptions& o) {
  if (o.seeds < 1) throw std::invalid_argument("run_wls_demo: seeds must be >= 1");
  const std::size_t D = o.preference_mean.size();
  const ArmModel dominated{o.dominated_mean, Vec(D, o.reward_variance)};
  const ArmModel optimal{o.optimal_mean, Vec(D, o.reward_variance)};
  const UserModel user{o.preference_mean, Vec(D, o.preference_variance), false};

  WlsDemoResult result;
  for (std::size_t k = 0; k < o.sample_counts.size(); ++k) {
    const int n = o.sample_counts[k];
    Vec wls_errors, ols_errors;
    for (int seed = 0; seed < o.seeds; ++seed) {
      const auto trial = static_cast<std::uint64_t>(seed) * 64 + k;
      auto rewards = derive_rng_stream(o.base_seed, trial, StreamRole::reward);
      auto preferences = derive_rng_stream(o.base_seed, trial, StreamRole::preference);
      const auto samples =
          draw_samples({{&dominated, n / 2}, {&optimal, n - n / 2}}, user, rewards, preferences);
      wls_errors.push_back(error_to(wls_estimate(samples, o), o.preference_mean));
      ols_errors.push_back(error_to(ols_estimate(samples, o), o.preference_mean));
    }
    const auto [wm, ws] = mean_std(wls_errors);
    const auto [om, os] = mean_std(ols_errors);
    result.cells.push_back({"wls", n, wm, ws});
    result.cells.push_back({"ols", n, om, os});
  }

  Vec dominated_errors, optimal_errors;
  for (int seed = 0; seed < o.seeds; ++seed) {
    const auto trial = static_cast<std::uint64_t>(seed) * 64 + 63;
    auto rewards = derive_rng_stream(o.base_seed, trial, StreamRole::reward);
    auto preferences = derive_rng_stream(o.base_seed, trial, StreamRole::preference);
    const auto a = draw_samples({{&dominated, o.single_arm_samples}}, user, rewards, preferences);
    const auto b = draw_samples({{&optimal, o.single_arm_samples}}, user, rewards, preferences);
    dominated_errors.push_back(error_to(ols_estimate(a, o), o.preference_mean));
    optimal_errors.push_back(error_to(ols_estimate(b, o), o.preference_mean));
  }
  result.ols_dominated_only = mean_std(dominated_errors).first;
  result.ols_optimal_only = mean_std(optimal_errors).first;
  return result;
}

std::string wls_demo_csv(const WlsDemoResult& result, int single_arm_samples) {
  std::string out = "estimator,samples,mean_error,std_error\n";
  char buf[160];
  for (const auto& c : result.cells) {
    std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g\n", c.estimator.c_str(), c.samples,
                  c.mean_error, c.std_error);
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "ols-dominated-arm-only,%d,%.17g,\n", single_arm_samples,
                result.ols_dominated_only);
  out += buf;
  std::snprintf(buf, sizeof buf, "ols-optimal-arm-only,%d,%.17g,\n", single_arm_samples,
                result.ols_optimal_only);
  out += buf;
  return out;
}

}  // namespace pamab
