#pragma once

#include <chrono>
#include <cstdint>
#include <stdexcept>

#include "mfl/instance.hpp"

namespace mfl {

struct ExactResult {
  Solution solution;
  std::uint64_t subsets_enumerated = 0;
  std::chrono::milliseconds elapsed{0};
};

inline constexpr std::uint64_t kDefaultMaxSubsets = 50'000'000;

/// C(n,k) exceeds the configured enumeration cap.
class SubsetLimitExceeded : public std::runtime_error {
 public:
  SubsetLimitExceeded(std::uint64_t count, std::uint64_t limit);
  std::uint64_t count;
  std::uint64_t limit;
};

/// Saturating binomial coefficient.
std::uint64_t binomial(int n, int k);

/// Enumerates every k-subset and returns the cheapest (ties: lexicographically
/// smallest subset). Work is split across `jobs` threads by subset rank.
ExactResult brute_force_opt(const Instance& instance,
                            std::uint64_t max_subsets = kDefaultMaxSubsets, int jobs = 1);

}  // namespace mfl
