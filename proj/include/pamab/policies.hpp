#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pamab/estimators.hpp"
#include "pamab/registry.hpp"
#include "pamab/rng.hpp"
#include "pamab/types.hpp"

namespace pamab {

// Uniform decision interface. Per round the harness calls select/observe once
// per user, in user order, then end_round once; reward statistics shared
// across users are applied in end_round.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string_view name() const = 0;
  virtual FeedbackRegime regime() const = 0;

  // Returns a member of `available`. Throws std::invalid_argument if empty.
  virtual int select(int user, std::span<const int> available, int t) = 0;
  virtual void observe(const RoundObservation& obs) = 0;
  virtual void end_round(int t) = 0;

  // Current preference estimate for diagnostics, when the policy keeps one.
  virtual std::optional<Vec> preference_estimate(int /*user*/) const { return std::nullopt; }
  // Observations whose preference update was skipped (zero reward vector).
  virtual int skipped_updates() const { return 0; }
};

// Reward estimates shared by all users; observations of a round are buffered
// and applied together at the end of the round.
class SharedRewards {
 public:
  SharedRewards(int num_arms, int num_objectives) : estimate_(num_arms, num_objectives) {}

  void push(int arm, const Vec& reward) { pending_.emplace_back(arm, reward); }
  void flush();

  const RewardEstimate& estimate() const { return estimate_; }

 private:
  RewardEstimate estimate_;
  std::vector<std::pair<int, Vec>> pending_;
};

// Index of the hidden-preference dual-exploration rule:
//   c^T r + rho |c|_1 + beta |r + rho e|_{V^{-1}}
double prucb_hp_index(std::span<const double> preference, std::span<const double> reward_mean,
                      double rho, double beta, const Cholesky& gram_factor);

// Index of the revealed/known preference rule: c^T (r + rho e).
double prucb_up_index(std::span<const double> preference, std::span<const double> reward_mean,
                      double rho);

// Argmax over `available` with ties going to the lowest arm index.
template <typename IndexFn>
int argmax_lowest(std::span<const int> available, IndexFn&& index) {
  int best = -1;
  double best_value = 0.0;
  for (int arm : available) {
    const double v = index(arm);
    if (best < 0 || v > best_value || (v == best_value && arm < best)) {
      best = arm;
      best_value = v;
    }
  }
  return best;
}

struct PolicyContext {
  Dimensions dims;
  std::vector<Vec> preference_means;  // only read by known-preference policies
  RandomStream stream{0};
};

// Builds a registered algorithm. Throws std::invalid_argument for an unknown
// name.
std::unique_ptr<Policy> make_policy(const AlgorithmSpec& spec, PolicyContext context);

}  // namespace pamab
