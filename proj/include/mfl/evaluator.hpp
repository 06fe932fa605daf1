#pragma once

#include <span>
#include <vector>

#include "mfl/cost.hpp"
#include "mfl/instance.hpp"

namespace mfl {

/// Per-client nearest and second-nearest open locations, ordered by
/// (distance, location index).
struct NearestIndex {
  struct Entry {
    Location nearest = kNoLocation;
    Cost nearest_dist = kInf;
    Location second = kNoLocation;  // kNoLocation with kInf when |S| = 1
    Cost second_dist = kInf;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;
  friend bool operator==(const NearestIndex&, const NearestIndex&) = default;
};

/// Closes `out` (subset of S) and opens `in` (subset of V \ S), |out| = |in|.
struct SwapMove {
  std::vector<Location> out;
  std::vector<Location> in;
  Cost delta = 0;  // total cost change; kInf if the swapped solution is unreachable
};

NearestIndex build_index(const Instance& instance, std::span<const Location> open);

/// Incremental update after swapping `out` for `in`; equals a rebuild on the
/// new set.
NearestIndex update_index(const Instance& instance, const NearestIndex& index,
                          std::span<const Location> new_open, std::span<const Location> out,
                          std::span<const Location> in);

/// Exact cost change of swap(out, in) relative to `current`. The movement part
/// re-solves the full matching. Throws InvalidInput on a malformed move.
SwapMove evaluate_swap(const Instance& instance, const Solution& current,
                       const NearestIndex& index, std::span<const Location> out,
                       std::span<const Location> in);

/// Assignment cost of (S \ out) U in from the index.
Cost swapped_assignment_cost(const Instance& instance, std::span<const Location> open,
                             const NearestIndex& index, std::span<const Location> out,
                             std::span<const Location> in);

/// (S \ out) U in, sorted.
std::vector<Location> apply_swap(std::span<const Location> open, std::span<const Location> out,
                                 std::span<const Location> in);

}  // namespace mfl
