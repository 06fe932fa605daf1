#pragma once

#include <span>
#include <vector>

#include "mfl/cost.hpp"
#include "mfl/instance.hpp"

namespace mfl {

struct MatchingResult {
  std::vector<int> assignment;  // row -> column
  Cost cost = 0;                // kInf when every perfect matching touches kInf
};

/// Exact minimum-cost perfect matching on a square non-negative matrix
/// (Hungarian method with potentials, O(k^3)). For k <= kLexMatchingLimit the
/// returned assignment is the lexicographically smallest optimal one.
/// Throws InvalidInput on a non-square matrix or a negative entry.
MatchingResult min_cost_perfect_matching(const std::vector<std::vector<Cost>>& costs);

inline constexpr int kLexMatchingLimit = 9;

/// Optimal cost only; skips the lexicographic pass.
Cost min_cost_perfect_matching_cost(const std::vector<std::vector<Cost>>& costs);

struct Movement {
  Cost cost = 0;
  std::vector<Location> destinations;  // per facility
};

/// Cheapest way of moving the k facilities onto the k locations in `targets`
/// (weighted movement metric). Throws InvalidInput if |targets| != k.
Movement movement_cost(const Instance& instance, std::span<const Location> targets);

/// Cost-only variant used inside neighborhood scans.
Cost movement_cost_value(const Instance& instance, std::span<const Location> targets);

/// Re-matches facilities onto a destination set and evaluates the result.
Solution solution_from_set(const Instance& instance, std::span<const Location> targets);

}  // namespace mfl
