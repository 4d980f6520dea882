#include "pamab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pamab/linalg.hpp"
#include "pamab/pareto.hpp"

namespace pamab {

void SharedRewards::flush() {
  for (const auto& [arm, reward] : pending_) estimate_.update(arm, reward);
  pending_.clear();
}

double prucb_hp_index(std::span<const double> preference, std::span<const double> reward_mean,
                      double rho, double beta, const Cholesky& gram_factor) {
  Vec optimistic(reward_mean.begin(), reward_mean.end());
  for (auto& v : optimistic) v += rho;
  const double reward_bonus = rho * norm1(preference);
  const double preference_bonus =
      beta * std::sqrt(gram_factor.inverse_quadratic_form(optimistic));
  return dot(preference, reward_mean) + reward_bonus + preference_bonus;
}

double prucb_up_index(std::span<const double> preference, std::span<const double> reward_mean,
                      double rho) {
  double s = 0.0;
  for (std::size_t d = 0; d < preference.size(); ++d) s += preference[d] * (reward_mean[d] + rho);
  return s;
}

namespace {

void require_available(std::span<const int> available) {
  if (available.empty()) throw std::invalid_argument("select: empty availability set");
}

std::optional<int> first_unpulled(std::span<const int> available, const auto& count_of) {
  std::optional<int> best;
  for (int arm : available) {
    if (count_of(arm) == 0 && (!best || arm < *best)) best = arm;
  }
  return best;
}

std::size_t index_of(int user) { return static_cast<std::size_t>(user); }

class PrucbHp final : public Policy {
 public:
  PrucbHp(const AlgorithmSpec& spec, const Dimensions& dims)
      : spec_(spec),
        dims_(dims),
        shared_(dims.num_arms, dims.num_objectives),
        grams_(static_cast<std::size_t>(dims.num_users),
               GramState(dims.num_objectives, spec.lambda, spec.omega)),
        estimates_(static_cast<std::size_t>(dims.num_users),
                   Vec(static_cast<std::size_t>(dims.num_objectives), 1.0 / dims.num_objectives)) {}

  std::string_view name() const override { return "prucb-hp"; }
  FeedbackRegime regime() const override { return FeedbackRegime::hidden; }

  int select(int user, std::span<const int> available, int t) override {
    require_available(available);
    const auto& c = estimates_.at(index_of(user));
    const Cholesky factor = grams_[index_of(user)].factor();
    const double beta =
        confidence_radius_beta(t, spec_.lambda, spec_.omega, dims_.num_objectives, spec_.beta);
    const auto& est = shared_.estimate();
    return argmax_lowest(available, [&](int arm) {
      const double rho = hoeffding_bonus(t, spec_.alpha, est.count(arm));
      return prucb_hp_index(c, est.mean(arm), rho, beta, factor);
    });
  }

  void observe(const RoundObservation& obs) override {
    auto& gram = grams_.at(index_of(obs.user));
    if (norm2(obs.reward) > 0.0) {
      gram.update(obs.reward, obs.overall);
      estimates_[index_of(obs.user)] = wls_solve(gram).value;
    } else {
      ++skipped_;
    }
    shared_.push(obs.arm, obs.reward);
  }

  void end_round(int) override { shared_.flush(); }

  std::optional<Vec> preference_estimate(int user) const override {
    return estimates_.at(index_of(user));
  }
  int skipped_updates() const override { return skipped_; }

 private:
  AlgorithmSpec spec_;
  Dimensions dims_;
  SharedRewards shared_;
  std::vector<GramState> grams_;
  std::vector<Vec> estimates_;
  int skipped_ = 0;
};

// PRUCB-UP and its known-preference variant share the selection rule; they
// differ only in where the preference vector comes from.
class PrucbUp final : public Policy {
 public:
  PrucbUp(const AlgorithmSpec& spec, const Dimensions& dims, std::vector<Vec> known_means)
      : spec_(spec), shared_(dims.num_arms, dims.num_objectives), known_(!known_means.empty()) {
    if (known_) {
      if (known_means.size() != static_cast<std::size_t>(dims.num_users)) {
        throw std::invalid_argument("prucb-kp: need one preference mean per user");
      }
      for (auto& m : known_means) estimates_.push_back({std::move(m), PreferenceMode::known});
    } else {
      estimates_.assign(static_cast<std::size_t>(dims.num_users),
                        {Vec(static_cast<std::size_t>(dims.num_objectives), 0.0),
                         PreferenceMode::running_mean});
    }
    feedback_count_.assign(static_cast<std::size_t>(dims.num_users), 0);
  }

  std::string_view name() const override { return known_ ? "prucb-kp" : "prucb-up"; }
  FeedbackRegime regime() const override {
    return known_ ? FeedbackRegime::known : FeedbackRegime::revealed;
  }

  int select(int user, std::span<const int> available, int t) override {
    require_available(available);
    const auto& c = estimates_.at(index_of(user)).value;
    const auto& est = shared_.estimate();
    return argmax_lowest(available, [&](int arm) {
      return prucb_up_index(c, est.mean(arm), hoeffding_bonus(t, spec_.alpha, est.count(arm)));
    });
  }

  void observe(const RoundObservation& obs) override {
    if (!known_) {
      if (!obs.preference) {
        throw std::invalid_argument("prucb-up: observation carries no preference feedback");
      }
      auto& est = estimates_.at(index_of(obs.user));
      const int t = ++feedback_count_[index_of(obs.user)];
      est = update_running_mean_preference(est, t, *obs.preference);
    }
    shared_.push(obs.arm, obs.reward);
  }

  void end_round(int) override { shared_.flush(); }

  std::optional<Vec> preference_estimate(int user) const override {
    return estimates_.at(index_of(user)).value;
  }

 private:
  AlgorithmSpec spec_;
  SharedRewards shared_;
  bool known_;
  std::vector<PreferenceEstimate> estimates_;
  std::vector<int> feedback_count_;
};

class ParetoBaseline final : public Policy {
 public:
  enum class Kind { ucb, thompson };

  ParetoBaseline(Kind kind, const AlgorithmSpec& spec, const Dimensions& dims, RandomStream stream)
      : kind_(kind),
        spec_(spec),
        dims_(dims),
        shared_(dims.num_arms, dims.num_objectives),
        stream_(std::move(stream)) {}

  std::string_view name() const override {
    return kind_ == Kind::ucb ? "pareto-ucb" : "pareto-ts";
  }
  FeedbackRegime regime() const override { return FeedbackRegime::hidden; }

  int select(int, std::span<const int> available, int t) override {
    require_available(available);
    const auto& est = shared_.estimate();
    if (auto arm = first_unpulled(available, [&](int i) { return est.count(i); })) return *arm;

    std::vector<Vec> scores;
    scores.reserve(available.size());
    const double dk = static_cast<double>(dims_.num_objectives) * dims_.num_arms;
    const double log_term = std::log(t * std::pow(dk, spec_.pareto_exponent));
    for (int arm : available) {
      Vec s = est.mean(arm);
      const double n = est.count(arm);
      if (kind_ == Kind::ucb) {
        const double bonus = std::sqrt(2.0 * std::max(0.0, log_term) / n);
        for (auto& v : s) v += bonus;
      } else {
        const double sd = 1.0 / std::sqrt(n + 1.0);
        for (auto& v : s) v += sd * stream_.gaussian();
      }
      scores.push_back(std::move(s));
    }
    const auto front = pareto_front(scores);
    const auto pick = stream_.uniform_index(front.members.size());
    return available[static_cast<std::size_t>(front.members[pick])];
  }

  void observe(const RoundObservation& obs) override { shared_.push(obs.arm, obs.reward); }
  void end_round(int) override { shared_.flush(); }

 private:
  Kind kind_;
  AlgorithmSpec spec_;
  Dimensions dims_;
  SharedRewards shared_;
  RandomStream stream_;
};

enum class IndexRule { ucb, moss };

double scalar_bonus(IndexRule rule, int t, int horizon, int num_arms, int pulls) {
  const double n = pulls;
  if (rule == IndexRule::ucb) {
    return std::sqrt(2.0 * std::log(static_cast<double>(t)) / n);
  }
  return std::sqrt(std::max(0.0, std::log(horizon / (num_arms * n))) / n);
}

// S-UCB / S-MOSS: fixed-weight scalarization of the reward vector.
class ScalarizedBaseline final : public Policy {
 public:
  ScalarizedBaseline(IndexRule rule, const AlgorithmSpec& spec, const Dimensions& dims)
      : rule_(rule), dims_(dims), shared_(dims.num_arms, dims.num_objectives), weights_(spec.weights) {
    if (weights_.empty()) {
      weights_.assign(static_cast<std::size_t>(dims.num_objectives), 1.0 / dims.num_objectives);
    }
  }

  std::string_view name() const override { return rule_ == IndexRule::ucb ? "s-ucb" : "s-moss"; }
  FeedbackRegime regime() const override { return FeedbackRegime::hidden; }

  int select(int, std::span<const int> available, int t) override {
    require_available(available);
    const auto& est = shared_.estimate();
    if (auto arm = first_unpulled(available, [&](int i) { return est.count(i); })) return *arm;
    return argmax_lowest(available, [&](int arm) {
      return dot(weights_, est.mean(arm)) +
             scalar_bonus(rule_, t, dims_.horizon, dims_.num_arms, est.count(arm));
    });
  }

  void observe(const RoundObservation& obs) override { shared_.push(obs.arm, obs.reward); }
  void end_round(int) override { shared_.flush(); }

 private:
  IndexRule rule_;
  Dimensions dims_;
  SharedRewards shared_;
  Vec weights_;
};

// UCB / MOSS on the overall scalar reward, pooled over users per arm.
class ScalarFeedbackBaseline final : public Policy {
 public:
  ScalarFeedbackBaseline(IndexRule rule, const Dimensions& dims)
      : rule_(rule),
        dims_(dims),
        means_(static_cast<std::size_t>(dims.num_arms), 0.0),
        counts_(static_cast<std::size_t>(dims.num_arms), 0) {}

  std::string_view name() const override { return rule_ == IndexRule::ucb ? "ucb" : "moss"; }
  FeedbackRegime regime() const override { return FeedbackRegime::hidden; }

  int select(int, std::span<const int> available, int t) override {
    require_available(available);
    auto count_of = [&](int i) { return counts_[static_cast<std::size_t>(i)]; };
    if (auto arm = first_unpulled(available, count_of)) return *arm;
    return argmax_lowest(available, [&](int arm) {
      return means_[static_cast<std::size_t>(arm)] +
             scalar_bonus(rule_, t, dims_.horizon, dims_.num_arms, count_of(arm));
    });
  }

  void observe(const RoundObservation& obs) override { pending_.emplace_back(obs.arm, obs.overall); }

  void end_round(int) override {
    for (const auto& [arm, g] : pending_) {
      const auto i = static_cast<std::size_t>(arm);
      const int n = ++counts_[i];
      means_[i] = (means_[i] * (n - 1) + g) / n;
    }
    pending_.clear();
  }

 private:
  IndexRule rule_;
  Dimensions dims_;
  std::vector<double> means_;
  std::vector<int> counts_;
  std::vector<std::pair<int, double>> pending_;
};

// Epsilon-greedy linear bandit: ridge preference estimate from (r, g), with
// the empirical reward mean standing in for the arm feature.
class OfulEpsilon final : public Policy {
 public:
  OfulEpsilon(const AlgorithmSpec& spec, const Dimensions& dims, RandomStream stream)
      : epsilon_(spec.epsilon),
        shared_(dims.num_arms, dims.num_objectives),
        ridge_(static_cast<std::size_t>(dims.num_users), RidgeAccumulator(dims.num_objectives, 1.0)),
        estimates_(static_cast<std::size_t>(dims.num_users),
                   Vec(static_cast<std::size_t>(dims.num_objectives), 0.0)),
        stream_(std::move(stream)) {}

  std::string_view name() const override { return "oful-eps"; }
  FeedbackRegime regime() const override { return FeedbackRegime::hidden; }

  int select(int user, std::span<const int> available, int) override {
    require_available(available);
    // Both draws are always consumed so the stream position does not depend
    // on the branch taken.
    const double u = stream_.uniform();
    const auto pick = stream_.uniform_index(available.size());
    if (u < epsilon_) return available[pick];
    const auto& c = estimates_.at(index_of(user));
    const auto& est = shared_.estimate();
    return argmax_lowest(available, [&](int arm) { return dot(c, est.mean(arm)); });
  }

  void observe(const RoundObservation& obs) override {
    auto& acc = ridge_.at(index_of(obs.user));
    acc.add(obs.reward, obs.overall);
    if (auto c = acc.solve()) estimates_[index_of(obs.user)] = std::move(*c);
    shared_.push(obs.arm, obs.reward);
  }

  void end_round(int) override { shared_.flush(); }

  std::optional<Vec> preference_estimate(int user) const override {
    return estimates_.at(index_of(user));
  }

 private:
  double epsilon_;
  SharedRewards shared_;
  std::vector<RidgeAccumulator> ridge_;
  std::vector<Vec> estimates_;
  RandomStream stream_;
};

}  // namespace

std::unique_ptr<Policy> make_policy(const AlgorithmSpec& spec, PolicyContext context) {
  const auto& dims = context.dims;
  const std::string& name = spec.name;
  if (name == "prucb-hp") return std::make_unique<PrucbHp>(spec, dims);
  if (name == "prucb-up") return std::make_unique<PrucbUp>(spec, dims, std::vector<Vec>{});
  if (name == "prucb-kp") {
    return std::make_unique<PrucbUp>(spec, dims, std::move(context.preference_means));
  }
  if (name == "pareto-ucb") {
    return std::make_unique<ParetoBaseline>(ParetoBaseline::Kind::ucb, spec, dims,
                                            std::move(context.stream));
  }
  if (name == "pareto-ts") {
    return std::make_unique<ParetoBaseline>(ParetoBaseline::Kind::thompson, spec, dims,
                                            std::move(context.stream));
  }
  if (name == "s-ucb") return std::make_unique<ScalarizedBaseline>(IndexRule::ucb, spec, dims);
  if (name == "s-moss") return std::make_unique<ScalarizedBaseline>(IndexRule::moss, spec, dims);
  if (name == "ucb") return std::make_unique<ScalarFeedbackBaseline>(IndexRule::ucb, dims);
  if (name == "moss") return std::make_unique<ScalarFeedbackBaseline>(IndexRule::moss, dims);
  if (name == "oful-eps") return std::make_unique<OfulEpsilon>(spec, dims, std::move(context.stream));
  throw std::invalid_argument("make_policy: unknown algorithm '" + name + "'");
}

}  // namespace pamab
