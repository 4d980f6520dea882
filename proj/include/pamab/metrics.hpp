#pragma once

#include <span>
#include <string>
#include <vector>

#include "pamab/types.hpp"

namespace pamab {

struct TrialRecord {
  std::string algorithm;
  int trial = 0;
  Vec increment;   // per-round regret summed over users, length T
  Vec cumulative;  // running sum of increment
  std::vector<Vec> per_user_cumulative;
  std::vector<Vec> preference_error;  // |c_t - c_bar|_2 per user per round; empty if no estimate
  std::vector<int> actions;           // T x N, row-major by round
  int skipped_updates = 0;

  bool operator==(const TrialRecord&) const = default;
};

// Optimal arm over `available` under true means; ties go to the lowest index.
int optimal_arm(std::span<const double> preference_mean, const std::vector<ArmModel>& arms,
                std::span<const int> available);

// c_bar^T (mu_{a*} - mu_chosen) with a* the availability-restricted optimum.
// Throws std::invalid_argument if chosen is not in `available`.
double regret_increment(std::span<const double> preference_mean, const std::vector<ArmModel>& arms,
                        std::span<const int> available, int chosen);

struct AlgorithmSummary {
  std::string algorithm;
  int trials = 0;
  Vec mean_curve;
  Vec std_curve;  // sample standard deviation, zero for a single trial
  double final_mean = 0.0;
  double final_std = 0.0;
  double final_min = 0.0;
  double final_max = 0.0;

  // Standard error of final_mean.
  double final_se() const;
};

// Pointwise mean and sample std of cumulative regret, grouped by algorithm in
// order of first appearance. Throws std::invalid_argument on mismatched
// horizons within an algorithm.
std::vector<AlgorithmSummary> aggregate(const std::vector<TrialRecord>& records);

}  // namespace pamab
