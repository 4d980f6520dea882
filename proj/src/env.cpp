#include "pamab/env.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pamab/registry.hpp"

namespace pamab {

Vec draw_reward(const ArmModel& arm, RandomStream& stream) {
  Vec r(arm.mean.size());
  for (std::size_t d = 0; d < r.size(); ++d) {
    const double x = arm.mean[d] + std::sqrt(arm.variance[d]) * stream.gaussian();
    r[d] = std::clamp(x, 0.0, 1.0);
  }
  return r;
}

Vec draw_preference(const UserModel& user, RandomStream& stream) {
  Vec c(user.mean.size());
  double l1 = 0.0;
  for (std::size_t d = 0; d < c.size(); ++d) {
    const double x = user.mean[d] + std::sqrt(user.variance[d]) * stream.gaussian();
    c[d] = std::max(x, 0.0);
    l1 += c[d];
  }
  if (user.normalize && l1 > 1.0) {
    for (auto& v : c) v /= l1;
  }
  return c;
}

double overall_reward(std::span<const double> preference, std::span<const double> reward) {
  if (preference.size() != reward.size()) {
    throw std::invalid_argument("overall_reward: preference has length " +
                                std::to_string(preference.size()) + ", reward has length " +
                                std::to_string(reward.size()));
  }
  double g = 0.0;
  for (std::size_t d = 0; d < reward.size(); ++d) g += preference[d] * reward[d];
  return g;
}

AvailabilityAssignment full_access(const Dimensions& dims) {
  std::vector<int> all(static_cast<std::size_t>(dims.num_arms));
  std::iota(all.begin(), all.end(), 0);
  return {std::vector<std::vector<int>>(static_cast<std::size_t>(dims.num_users), all)};
}

AvailabilityAssignment assign_blocks(const Dimensions& dims, int block_size, RandomStream& stream) {
  if (block_size < 1 || dims.num_arms != dims.num_users * block_size) {
    throw std::invalid_argument("assign_blocks: K=" + std::to_string(dims.num_arms) +
                                " is not N=" + std::to_string(dims.num_users) + " blocks of " +
                                std::to_string(block_size));
  }
  std::vector<int> perm(static_cast<std::size_t>(dims.num_users));
  std::iota(perm.begin(), perm.end(), 0);
  // Fisher-Yates
  for (std::size_t i = perm.size(); i > 1; --i) {
    std::swap(perm[i - 1], perm[stream.uniform_index(i)]);
  }
  AvailabilityAssignment out;
  out.arms.resize(perm.size());
  for (std::size_t n = 0; n < perm.size(); ++n) {
    auto& a = out.arms[n];
    a.resize(static_cast<std::size_t>(block_size));
    std::iota(a.begin(), a.end(), perm[n] * block_size);
  }
  return out;
}

AvailabilityAssignment draw_availability(const Dimensions& dims, const Protocol& protocol,
                                         RandomStream& stream) {
  if (protocol.kind == ProtocolKind::block_switching) {
    return assign_blocks(dims, protocol.block_size, stream);
  }
  return full_access(dims);
}

AlgorithmSpec default_algorithm(std::string_view name, int num_objectives) {
  AlgorithmSpec spec;
  spec.name = std::string(name);
  spec.omega = static_cast<double>(num_objectives);
  return spec;
}

std::vector<AlgorithmSpec> all_default_algorithms(int num_objectives) {
  std::vector<AlgorithmSpec> out;
  for (const auto& info : kAlgorithms) out.push_back(default_algorithm(info.name, num_objectives));
  return out;
}

RunConfig prop1_environment(int horizon, int trials, std::uint64_t seed) {
  RunConfig cfg;
  cfg.dims = {2, 2, 2, horizon};
  cfg.arms = {{{1.0, 0.0}, {0.0, 0.0}}, {{0.0, 1.0}, {0.0, 0.0}}};
  cfg.users = {{{1.0, 0.0}, {0.0, 0.0}, false}, {{0.0, 1.0}, {0.0, 0.0}, false}};
  cfg.protocol = {ProtocolKind::full_access, 1};
  cfg.algorithms = all_default_algorithms(2);
  cfg.trials = trials;
  cfg.base_seed = seed;
  return cfg;
}

RunConfig randomized_environment(const RandomizedEnvironmentOptions& options) {
  const auto& dims = options.dims;
  const auto D = static_cast<std::size_t>(dims.num_objectives);
  RandomStream gen(mix64(options.seed ^ 0x5eed5eed5eed5eedULL));

  RunConfig cfg;
  cfg.dims = dims;
  for (int i = 0; i < dims.num_arms; ++i) {
    ArmModel arm{Vec(D), Vec(D, options.reward_variance)};
    for (auto& m : arm.mean) m = gen.uniform();
    cfg.arms.push_back(std::move(arm));
  }
  for (int n = 0; n < dims.num_users; ++n) {
    UserModel user{Vec(D), Vec(D, options.preference_variance), false};
    if (options.preference == PreferenceKind::predefined) {
      const auto favourite = gen.uniform_index(D);
      for (std::size_t d = 0; d < D; ++d) user.mean[d] = d == favourite ? 2.0 : 0.5;
    } else {
      for (auto& m : user.mean) m = 5.0 * gen.uniform();
    }
    cfg.users.push_back(std::move(user));
  }
  cfg.protocol = {ProtocolKind::block_switching, options.block_size};
  cfg.algorithms = all_default_algorithms(dims.num_objectives);
  cfg.trials = options.trials;
  cfg.base_seed = options.seed;
  return cfg;
}

}  // namespace pamab
