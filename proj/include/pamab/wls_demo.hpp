#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pamab/types.hpp"

namespace pamab {

// Two-arm, two-objective toy for comparing preference estimators: a dominated
// arm at [0.2, 0.2], a Pareto-optimal arm at [0.8, 0.8] and a noisy
// preference centred on [0.5, 0.5].
struct WlsDemoOptions {
  int seeds = 50;
  std::vector<int> sample_counts{20, 50, 80, 200};  // split evenly between the arms
  int single_arm_samples = 80;
  Vec dominated_mean{0.2, 0.2};
  Vec optimal_mean{0.8, 0.8};
  Vec preference_mean{0.5, 0.5};
  double reward_variance = 0.01;
  double preference_variance = 0.05;
  double wls_lambda = 1.0;
  double wls_omega = 2.0;
  double ols_lambda = 0.0;  // plain least squares
  std::uint64_t base_seed = 2024;
};

struct WlsDemoCell {
  std::string estimator;  // "wls" | "ols"
  int samples = 0;
  double mean_error = 0.0;  // mean over seeds of |c_hat - c_bar|_2
  double std_error = 0.0;   // sample std over seeds
};

struct WlsDemoResult {
  std::vector<WlsDemoCell> cells;  // ordered by sample count, wls before ols
  // OLS error when all samples come from a single arm.
  double ols_dominated_only = 0.0;
  double ols_optimal_only = 0.0;

  const WlsDemoCell& cell(const std::string& estimator, int samples) const;
};

WlsDemoResult run_wls_demo(const WlsDemoOptions& options = {});

std::string wls_demo_csv(const WlsDemoResult& result, int single_arm_samples);

}  // namespace pamab
