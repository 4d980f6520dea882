#include "pamab/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pamab {

RewardEstimate::RewardEstimate(int num_arms, int num_objectives)
    : means_(static_cast<std::size_t>(num_arms), Vec(static_cast<std::size_t>(num_objectives), 0.0)),
      counts_(static_cast<std::size_t>(num_arms), 0) {}

void RewardEstimate::update(int arm, std::span<const double> reward) {
  if (arm < 0 || arm >= num_arms()) {
    throw std::out_of_range("RewardEstimate::update: invalid arm " + std::to_string(arm));
  }
  auto& mean = means_[static_cast<std::size_t>(arm)];
  if (reward.size() != mean.size()) {
    throw std::invalid_argument("RewardEstimate::update: reward length mismatch");
  }
  const int n = ++counts_[static_cast<std::size_t>(arm)];
  for (std::size_t d = 0; d < mean.size(); ++d) {
    mean[d] = (mean[d] * (n - 1) + reward[d]) / n;
  }
}

PreferenceEstimate update_running_mean_preference(const PreferenceEstimate& est, int t,
                                                  std::span<const double> preference) {
  if (est.mode != PreferenceMode::running_mean) {
    throw std::invalid_argument("update_running_mean_preference: estimate is not a running mean");
  }
  if (t < 1) throw std::invalid_argument("update_running_mean_preference: t must be >= 1");
  if (preference.size() != est.value.size()) {
    throw std::invalid_argument("update_running_mean_preference: length mismatch");
  }
  PreferenceEstimate next = est;
  for (std::size_t d = 0; d < next.value.size(); ++d) {
    next.value[d] = ((t - 1) * est.value[d] + preference[d]) / t;
  }
  return next;
}

GramState::GramState(int num_objectives, double lambda, double omega)
    : gram_(SquareMatrix::identity(static_cast<std::size_t>(num_objectives), lambda)),
      moment_(static_cast<std::size_t>(num_objectives), 0.0),
      lambda_(lambda),
      omega_(omega) {
  if (!(lambda > 0.0)) throw std::invalid_argument("GramState: lambda must be > 0");
  if (!(omega > 0.0)) throw std::invalid_argument("GramState: omega must be > 0");
}

double GramState::update(std::span<const double> reward, double overall) {
  if (reward.size() != moment_.size()) {
    throw std::invalid_argument("GramState::update: reward length mismatch");
  }
  const double sq = dot(reward, reward);
  if (!(sq > 0.0)) throw DegenerateObservation();
  const double w = omega_ / sq;
  gram_.add_outer(w, reward);
  for (std::size_t d = 0; d < moment_.size(); ++d) moment_[d] += w * overall * reward[d];
  ++samples_;
  return w;
}

Cholesky GramState::factor() const {
  auto chol = Cholesky::factor(gram_);
  if (!chol) throw std::runtime_error("GramState: Gram matrix is not positive definite");
  return std::move(*chol);
}

PreferenceEstimate wls_solve(const GramState& state) {
  return {state.factor().solve(state.moment()), PreferenceMode::wls};
}

RidgeAccumulator::RidgeAccumulator(int num_objectives, double lambda)
    : a_(SquareMatrix::identity(static_cast<std::size_t>(num_objectives), lambda)),
      b_(static_cast<std::size_t>(num_objectives), 0.0) {}

void RidgeAccumulator::add(std::span<const double> reward, double overall, double weight) {
  if (reward.size() != b_.size()) throw std::invalid_argument("RidgeAccumulator: length mismatch");
  a_.add_outer(weight, reward);
  for (std::size_t d = 0; d < b_.size(); ++d) b_[d] += weight * overall * reward[d];
}

std::optional<Vec> RidgeAccumulator::solve() const {
  auto chol = Cholesky::factor(a_);
  if (!chol) return std::nullopt;
  return chol->solve(b_);
}

Vec ols_solve(std::span<const std::pair<Vec, double>> samples, double lambda) {
  if (samples.empty()) throw std::invalid_argument("ols_solve: no samples");
  if (!(lambda >= 0.0)) throw std::invalid_argument("ols_solve: lambda must be >= 0");
  RidgeAccumulator acc(static_cast<int>(samples.front().first.size()), lambda);
  for (const auto& [r, g] : samples) acc.add(r, g);
  auto c = acc.solve();
  if (!c) throw std::domain_error("ols_solve: rank-deficient system");
  return std::move(*c);
}

double confidence_radius_beta(int t, double lambda, double omega, int num_objectives,
                              const BetaSchedule& schedule) {
  if (t < 1) throw std::invalid_argument("confidence_radius_beta: t must be >= 1");
  if (num_objectives < 1) throw std::invalid_argument("confidence_radius_beta: D must be >= 1");
  const double D = num_objectives;
  if (schedule.mode == BetaMode::experiment) {
    if (!(schedule.scale >= 0.0)) throw std::invalid_argument("confidence_radius_beta: scale < 0");
    return schedule.scale * std::sqrt(D * std::log(static_cast<double>(t)));
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("confidence_radius_beta: lambda must be > 0");
  if (!(omega > 0.0)) throw std::invalid_argument("confidence_radius_beta: omega must be > 0");
  const double theta = schedule.confidence;
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("confidence_radius_beta: confidence must lie in (0, 1)");
  }
  const double arg = (1.0 + omega * t / lambda) / theta;
  if (!(arg > 1.0)) throw std::invalid_argument("confidence_radius_beta: log argument <= 1");
  return std::sqrt(omega * D * std::log(arg)) + std::sqrt(lambda);
}

double hoeffding_bonus(int t, double alpha, int pulls) {
  const double l = std::log(static_cast<double>(t) / alpha);
  if (!(l > 0.0)) return 0.0;
  return std::sqrt(l / std::max(1, pulls));
}

}  // namespace pamab
