#include "mfl/exact.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "mfl/matching.hpp"

namespace mfl {

SubsetLimitExceeded::SubsetLimitExceeded(std::uint64_t count_, std::uint64_t limit_)
    : std::runtime_error("exact search refused: C(n,k) = " + std::to_string(count_) +
                         " subsets exceeds the limit of " + std::to_string(limit_)),
      count(count_),
      limit(limit_) {}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

std::vector<Location> unrank(int n, int k, std::uint64_t rank) {
  std::vector<Location> combo;
  combo.reserve(k);
  Location next = 0;
  for (int pos = 0; pos < k; ++pos) {
    for (Location c = next;; ++c) {
      const std::uint64_t below = binomial(n - c - 1, k - pos - 1);
      if (rank < below) {
        combo.push_back(c);
        next = c + 1;
        break;
      }
      rank -= below;
    }
  }
  return combo;
}

bool advance(std::vector<Location>& combo, int n) {
  const int k = static_cast<int>(combo.size());
  int t = k - 1;
  while (t >= 0 && combo[t] == n - k + t) --t;
  if (t < 0) return false;
  ++combo[t];
  for (int u = t + 1; u < k; ++u) combo[u] = combo[u - 1] + 1;
  return true;
}

struct Best {
  Cost total = kInf;
  std::vector<Location> set;
  bool found = false;
};

}  // namespace

ExactResult brute_force_opt(const Instance& instance, std::uint64_t max_subsets, int jobs) {
  instance.validate();
  const auto started = std::chrono::steady_clock::now();
  const int n = instance.n();
  const int k = instance.k();
  const std::uint64_t count = binomial(n, k);
  if (count > max_subsets) throw SubsetLimitExceeded(count, max_subsets);

  const auto workers = static_cast<std::uint64_t>(std::max(1, jobs));
  const std::uint64_t chunk = (count + workers - 1) / workers;
  std::vector<Best> partial(workers);
  auto work = [&](std::uint64_t w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) return;
    auto combo = unrank(n, k, begin);
    Best& best = partial[w];
    for (std::uint64_t r = begin; r < end; ++r) {
      const Cost total = sat_add(movement_cost_value(instance, combo), assignment_cost(instance, combo));
      // Ranks ascend lexicographically, so strict improvement keeps the smallest tie.
      if (!best.found || total < best.total) {
        best.found = true;
        best.total = total;
        best.set = combo;
      }
      if (r + 1 < end) advance(combo, n);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Best best;
  for (auto& p : partial) {
    if (p.found && (!best.found || p.total < best.total)) best = std::move(p);
  }
  ExactResult result;
  result.subsets_enumerated = count;
  if (best.found) result.solution = solution_from_set(instance, best.set);
  result.elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started);
  return result;
}

}  // namespace mfl
