#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pamab {

using Vec = std::vector<double>;

struct Dimensions {
  int num_arms = 1;        // K
  int num_objectives = 1;  // D
  int num_users = 1;       // N
  int horizon = 1;         // T

  bool operator==(const Dimensions&) const = default;
};

// Per-objective Gaussian generator of an arm. Draws are clipped to [0,1].
struct ArmModel {
  Vec mean;
  Vec variance;

  bool operator==(const ArmModel&) const = default;
};

// Per-objective Gaussian generator of a user's instantaneous preference.
// Negative draws are clipped to 0; with `normalize` the draw is rescaled to
// l1 norm 1 whenever it exceeds 1.
struct UserModel {
  Vec mean;
  Vec variance;
  bool normalize = false;

  bool operator==(const UserModel&) const = default;
};

enum class ProtocolKind { full_access, block_switching };

struct Protocol {
  ProtocolKind kind = ProtocolKind::full_access;
  int block_size = 5;

  bool operator==(const Protocol&) const = default;
};

enum class BetaMode { experiment, theory };

// Confidence radius schedule for the preference bonus.
//   experiment: scale * sqrt(D log t)
//   theory:     sqrt(omega D log((1 + omega t / lambda) / confidence)) + sqrt(lambda)
struct BetaSchedule {
  BetaMode mode = BetaMode::experiment;
  double scale = 0.1;
  double confidence = 0.1;

  bool operator==(const BetaSchedule&) const = default;
};

struct AlgorithmSpec {
  std::string name;
  double alpha = 1.0;
  double lambda = 1.0;
  double omega = 0.0;  // 0 means "use D"; resolved by the config parser
  BetaSchedule beta;
  double epsilon = 0.05;
  Vec weights;  // scalarization weights, empty means equal weights
  double pareto_exponent = 0.25;  // Pareto-UCB uses log(t (D K)^exponent)

  bool operator==(const AlgorithmSpec&) const = default;
};

inline constexpr int kSchemaVersion = 1;

struct RunConfig {
  int schema_version = kSchemaVersion;
  Dimensions dims;
  std::vector<ArmModel> arms;
  std::vector<UserModel> users;
  Protocol protocol;
  std::vector<AlgorithmSpec> algorithms;
  int trials = 1;
  std::uint64_t base_seed = 0;

  bool operator==(const RunConfig&) const = default;
};

// One user's interaction in one round, as handed to a policy.
struct RoundObservation {
  int user = 0;
  int arm = 0;
  Vec reward;
  double overall = 0.0;
  std::optional<Vec> preference;  // present only when preference feedback is revealed
};

}  // namespace pamab
