#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pamab/rng.hpp"
#include "pamab/types.hpp"

namespace pamab {

// Per-user selectable arms for one round.
struct AvailabilityAssignment {
  std::vector<std::vector<int>> arms;  // arms[n] = A_t^n, ascending
};

Vec draw_reward(const ArmModel& arm, RandomStream& stream);
Vec draw_preference(const UserModel& user, RandomStream& stream);

// Sum_d c(d) r(d). Throws std::invalid_argument on length mismatch.
double overall_reward(std::span<const double> preference, std::span<const double> reward);

AvailabilityAssignment full_access(const Dimensions& dims);

// Arms are split into N fixed contiguous blocks of `block_size`; blocks are
// dealt to users by a uniformly random permutation.
AvailabilityAssignment assign_blocks(const Dimensions& dims, int block_size, RandomStream& stream);

// Draws the round's availability according to `protocol`. Full access consumes
// no randomness.
AvailabilityAssignment draw_availability(const Dimensions& dims, const Protocol& protocol,
                                         RandomStream& stream);

// Two fixed, incomparable arms ([1,0] and [0,1]) and two users with constant
// preferences [1,0] and [0,1]. Any preference-free policy suffers linear
// regret here. Returns a config with every registered algorithm.
RunConfig prop1_environment(int horizon = 5000, int trials = 10, std::uint64_t seed = 0);

enum class PreferenceKind {
  predefined,  // 2.0 on one random objective, 0.5 elsewhere
  randomized,  // uniform in [0, 5]
};

struct RandomizedEnvironmentOptions {
  Dimensions dims{15, 4, 3, 5000};
  PreferenceKind preference = PreferenceKind::randomized;
  double reward_variance = 0.01;
  double preference_variance = 0.5;
  int block_size = 5;
  int trials = 10;
  std::uint64_t seed = 0;  // drives both the random means and base_seed
};

// Synthetic environment: arm means uniform in [0,1]^D, user means from
// `preference`, block-switching protocol, all registered algorithms with
// default hyperparameters.
RunConfig randomized_environment(const RandomizedEnvironmentOptions& options);

// Default hyperparameters for a registered algorithm in dimension D.
AlgorithmSpec default_algorithm(std::string_view name, int num_objectives);
std::vector<AlgorithmSpec> all_default_algorithms(int num_objectives);

}  // namespace pamab
