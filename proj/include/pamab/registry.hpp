#pragma once

#include <array>
#include <string_view>

namespace pamab {

// What a policy is allowed to see after pulling an arm.
enum class FeedbackRegime {
  hidden,    // reward vector and overall reward only
  revealed,  // plus the instantaneous preference
  known,     // preference mean supplied up front, no preference feedback
};

struct AlgorithmInfo {
  std::string_view name;
  FeedbackRegime regime;
  bool preference_free;
};

inline constexpr std::array<AlgorithmInfo, 10> kAlgorithms{{
    {"prucb-hp", FeedbackRegime::hidden, false},
    {"prucb-up", FeedbackRegime::revealed, false},
    {"prucb-kp", FeedbackRegime::known, false},
    {"pareto-ucb", FeedbackRegime::hidden, true},
    {"pareto-ts", FeedbackRegime::hidden, true},
    {"s-ucb", FeedbackRegime::hidden, true},
    {"s-moss", FeedbackRegime::hidden, true},
    {"ucb", FeedbackRegime::hidden, true},
    {"moss", FeedbackRegime::hidden, true},
    {"oful-eps", FeedbackRegime::hidden, false},
}};

constexpr const AlgorithmInfo* find_algorithm(std::string_view name) {
  for (const auto& info : kAlgorithms) {
    if (info.name == name) return &info;
  }
  return nullptr;
}

constexpr bool is_registered_algorithm(std::string_view name) {
  return find_algorithm(name) != nullptr;
}

}  // namespace pamab
