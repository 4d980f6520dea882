#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pamab/linalg.hpp"
#include "pamab/types.hpp"

namespace pamab {

// Per-arm empirical mean reward vectors and pull counts.
class RewardEstimate {
 public:
  RewardEstimate(int num_arms, int num_objectives);

  // Running mean update; throws std::out_of_range for an invalid arm.
  void update(int arm, std::span<const double> reward);

  const Vec& mean(int arm) const { return means_.at(static_cast<std::size_t>(arm)); }
  int count(int arm) const { return counts_.at(static_cast<std::size_t>(arm)); }
  int num_arms() const { return static_cast<int>(counts_.size()); }

  bool operator==(const RewardEstimate&) const = default;

 private:
  std::vector<Vec> means_;
  std::vector<int> counts_;
};

enum class PreferenceMode { running_mean, wls, known };

struct PreferenceEstimate {
  Vec value;
  PreferenceMode mode = PreferenceMode::running_mean;

  bool operator==(const PreferenceEstimate&) const = default;
};

// c_{t+1} = ((t - 1) c_t + c) / t, starting from zeros at t = 1.
PreferenceEstimate update_running_mean_preference(const PreferenceEstimate& est, int t,
                                                  std::span<const double> preference);

class DegenerateObservation : public std::domain_error {
 public:
  DegenerateObservation() : std::domain_error("degenerate observation: zero reward vector") {}
};

// Weighted ridge state for the hidden-preference estimator:
//   V = lambda I + sum_l w_l r_l r_l^T,   b = sum_l w_l g_l r_l,   w_l = omega / |r_l|^2.
class GramState {
 public:
  GramState(int num_objectives, double lambda, double omega);

  // Returns the sample weight. Throws DegenerateObservation when |r| = 0.
  double update(std::span<const double> reward, double overall);

  const SquareMatrix& gram() const { return gram_; }
  const Vec& moment() const { return moment_; }
  double lambda() const { return lambda_; }
  double omega() const { return omega_; }
  int samples() const { return samples_; }

  // Cholesky factor of V. Throws std::runtime_error if V is not PD, which the
  // construction rules out.
  Cholesky factor() const;

  bool operator==(const GramState&) const = default;

 private:
  SquareMatrix gram_;
  Vec moment_;
  double lambda_;
  double omega_;
  int samples_ = 0;
};

// Closed-form weighted ridge solution V^{-1} b (zeros for an empty state).
PreferenceEstimate wls_solve(const GramState& state);

// Incremental (optionally weighted) ridge normal equations A c = b with
// A = lambda I + sum w r r^T and b = sum w g r.
class RidgeAccumulator {
 public:
  RidgeAccumulator(int num_objectives, double lambda);

  void add(std::span<const double> reward, double overall, double weight = 1.0);
  // Empty when A is singular.
  std::optional<Vec> solve() const;

  const SquareMatrix& normal_matrix() const { return a_; }
  const Vec& rhs() const { return b_; }

 private:
  SquareMatrix a_;
  Vec b_;
};

// Unweighted ridge argmin_c lambda |c|^2 + sum (c^T r - g)^2. Throws
// std::domain_error when the system is singular (only possible at lambda = 0).
Vec ols_solve(std::span<const std::pair<Vec, double>> samples, double lambda);

// Preference confidence radius beta_t. Throws std::invalid_argument outside
// t >= 1, lambda > 0, omega > 0, 0 < confidence < 1.
double confidence_radius_beta(int t, double lambda, double omega, int num_objectives,
                              const BetaSchedule& schedule);

// sqrt(log(t / alpha) / max(1, N)), floored at zero for t < alpha.
double hoeffding_bonus(int t, double alpha, int pulls);

}  // namespace pamab
