#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pamab/types.hpp"

namespace pamab {

// u dominates v iff u(d) > v(d) for every d. Equal vectors do not dominate
// each other. Throws std::invalid_argument on length mismatch.
bool dominates(std::span<const double> u, std::span<const double> v);

struct FrontResult {
  std::vector<int> members;               // ascending indices of non-dominated vectors
  std::vector<std::optional<int>> witness;  // witness[i]: a member dominating i, empty for members
};

// O(n^2 D) scan. Throws std::invalid_argument on empty input or ragged lengths.
FrontResult pareto_front(const std::vector<Vec>& vectors);

}  // namespace pamab
