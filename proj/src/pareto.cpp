#include "pamab/pareto.hpp"

#include <stdexcept>

namespace pamab {

bool dominates(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::invalid_argument("dominates: length mismatch");
  if (u.empty()) return false;
  for (std::size_t d = 0; d < u.size(); ++d) {
    if (!(u[d] > v[d])) return false;
  }
  return true;
}

FrontResult pareto_front(const std::vector<Vec>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("pareto_front: empty input");
  const std::size_t n = vectors.size();
  for (const auto& v : vectors) {
    if (v.size() != vectors.front().size()) {
      throw std::invalid_argument("pareto_front: vectors of unequal length");
    }
  }

  std::vector<std::optional<int>> dominator(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && dominates(vectors[j], vectors[i])) {
        dominator[i] = static_cast<int>(j);
        break;
      }
    }
  }

  FrontResult result;
  result.witness.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!dominator[i]) {
      result.members.push_back(static_cast<int>(i));
      continue;
    }
    // Dominance is a strict partial order, so the chain ends at a member,
    // which dominates i by transitivity.
    int w = *dominator[i];
    while (dominator[static_cast<std::size_t>(w)]) w = *dominator[static_cast<std::size_t>(w)];
    result.witness[i] = w;
  }
  return result;
}

}  // namespace pamab
