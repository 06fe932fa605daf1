#include "mfl/local_search.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

#include "mfl/exact.hpp"
#include "mfl/matching.hpp"

namespace mfl {

void SearchConfig::validate() const {
  if (rho < 1) throw InvalidInput("rho must be >= 1");
  if (epsilon_num < 0 || epsilon_den < 1) throw InvalidInput("epsilon must be a non-negative fraction");
  if (max_iters < 1) throw InvalidInput("max_iters must be >= 1");
  if (jobs < 1) throw InvalidInput("jobs must be >= 1");
}

std::uint64_t neighborhood_size(int n, int k, int rho) {
  std::uint64_t total = 0;
  for (int q = 1; q <= rho; ++q) {
    const std::uint64_t a = binomial(k, q);
    const std::uint64_t b = binomial(n - k, q);
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    total += a * b;
  }
  return total;
}

int clamp_rho(const Instance& instance, int rho) {
  return std::max(0, std::min({rho, instance.k(), instance.n() - instance.k()}));
}

namespace {

/// All q-subsets of `items` (sorted input gives lexicographic output).
std::vector<std::vector<Location>> combinations(const std::vector<Location>& items, int q) {
  std::vector<std::vector<Location>> out;
  const int m = static_cast<int>(items.size());
  if (q > m || q < 0) return out;
  std::vector<int> idx(q);
  std::iota(idx.begin(), idx.end(), 0);
  for (;;) {
    std::vector<Location> combo(q);
    for (int t = 0; t < q; ++t) combo[t] = items[idx[t]];
    out.push_back(std::move(combo));
    int t = q - 1;
    while (t >= 0 && idx[t] == m - q + t) --t;
    if (t < 0) break;
    ++idx[t];
    for (int u = t + 1; u < q; ++u) idx[u] = idx[u - 1] + 1;
  }
  return out;
}

std::vector<Location> complement(int n, const std::vector<Location>& open) {
  std::vector<char> is_open(static_cast<std::size_t>(n), 0);
  for (Location s : open) is_open[s] = 1;
  std::vector<Location> out;
  for (Location v = 0; v < n; ++v) {
    if (!is_open[v]) out.push_back(v);
  }
  return out;
}

/// Strict total order on evaluated moves: lower delta, then smaller (out, in).
bool better(const SwapMove& a, const SwapMove& b) {
  if (a.delta != b.delta) return a.delta < b.delta;
  if (a.out != b.out) return a.out < b.out;
  return a.in < b.in;
}

struct Neighborhood {
  struct Block {
    std::vector<std::vector<Location>> outs;
    std::vector<std::vector<Location>> ins;
    std::uint64_t size() const { return static_cast<std::uint64_t>(outs.size()) * ins.size(); }
  };
  std::vector<Block> blocks;
  std::uint64_t total = 0;

  Neighborhood(const Instance& instance, const std::vector<Location>& open, int rho) {
    const auto sorted_open = [&] {
      auto s = open;
      std::sort(s.begin(), s.end());
      return s;
    }();
    const auto closed = complement(instance.n(), sorted_open);
    for (int q = 1; q <= rho; ++q) {
      Block b{combinations(sorted_open, q), combinations(closed, q)};
      total += b.size();
      blocks.push_back(std::move(b));
    }
  }

  /// Visits candidates with flat index in [begin, end) in order.
  template <typename Fn>
  bool for_range(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    std::uint64_t base = 0;
    for (const auto& b : blocks) {
      const std::uint64_t size = b.size();
      if (begin < base + size && end > base) {
        const std::uint64_t lo = std::max(begin, base) - base;
        const std::uint64_t hi = std::min(end, base + size) - base;
        for (std::uint64_t r = lo; r < hi; ++r) {
          if (!fn(b.outs[r / b.ins.size()], b.ins[r % b.ins.size()])) return false;
        }
      }
      base += size;
    }
    return true;
  }
};

struct ScanResult {
  std::optional<SwapMove> best;
  std::uint64_t candidates = 0;
};

ScanResult scan_best(const Instance& instance, const Solution& current, const NearestIndex& index, int rho,
                     int jobs) {
  const Neighborhood hood(instance, current.destinations, rho);
  ScanResult result;
  result.candidates = hood.total;
  if (hood.total != neighborhood_size(instance.n(), instance.k(), rho)) {
    throw std::logic_error("neighborhood enumeration is incomplete");
  }
  if (hood.total == 0) return result;

  const auto workers = static_cast<std::uint64_t>(std::max(1, jobs));
  const std::uint64_t chunk = (hood.total + workers - 1) / workers;
  std::vector<std::optional<SwapMove>> partial(workers);
  auto work = [&](std::uint64_t w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(hood.total, begin + chunk);
    hood.for_range(begin, end, [&](const std::vector<Location>& out, const std::vector<Location>& in) {
      SwapMove m = evaluate_swap(instance, current, index, out, in);
      if (!partial[w] || better(m, *partial[w])) partial[w] = std::move(m);
      return true;
    });
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::uint64_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& p : partial) {
    if (p && (!result.best || better(*p, *result.best))) result.best = std::move(p);
  }
  return result;
}

bool clears_threshold(Cost delta, Cost total, const SearchConfig& config) {
  if (delta >= 0) return false;
  if (delta == -kInf) return true;
  const __int128 gain = static_cast<__int128>(-delta) * config.epsilon_den;
  const __int128 needed = static_cast<__int128>(config.epsilon_num) * (total == kInf ? 0 : total);
  return gain >= needed;
}

}  // namespace

std::vector<Location> initial_set(const Instance& instance, const SearchConfig& config) {
  const int n = instance.n();
  const int k = instance.k();
  std::vector<Location> set;
  switch (config.init) {
    case InitKind::AtInitial: {
      std::vector<Location> homes;
      for (const auto& f : instance.facilities) homes.push_back(f.loc);
      set = canonicalize_destinations(instance, homes);
      break;
    }
    case InitKind::RandomK: {
      std::vector<Location> all(static_cast<std::size_t>(n));
      std::iota(all.begin(), all.end(), 0);
      std::mt19937_64 rng(config.seed);
      std::sample(all.begin(), all.end(), std::back_inserter(set), k, rng);
      break;
    }
    case InitKind::Greedy: {
      std::vector<char> chosen(static_cast<std::size_t>(n), 0);
      for (int step = 0; step < k; ++step) {
        Location best = kNoLocation;
        Cost best_cost = kInf;
        for (Location v = 0; v < n; ++v) {
          if (chosen[v]) continue;
          set.push_back(v);
          const Cost c = assignment_cost(instance, set);
          set.pop_back();
          if (best == kNoLocation || c < best_cost) {
            best = v;
            best_cost = c;
          }
        }
        chosen[best] = 1;
        set.push_back(best);
      }
      break;
    }
    case InitKind::List: {
      set = config.init_list;
      if (static_cast<int>(set.size()) != k) {
        throw InvalidInput("initial list has " + std::to_string(set.size()) + " locations, expected k = " +
                           std::to_string(k));
      }
      for (Location v : set) {
        if (v < 0 || v >= n) throw InvalidInput("initial location " + std::to_string(v) + " out of range");
      }
      break;
    }
  }
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    throw InvalidInput("initial destination set repeats a location");
  }
  return set;
}

StepResult best_improvement_step(const Instance& instance, const Solution& current, const NearestIndex& index,
                                 const SearchConfig& config) {
  const int rho = clamp_rho(instance, config.rho);
  StepResult step;
  if (config.strategy == Strategy::FirstImprovement) {
    const Neighborhood hood(instance, current.destinations, rho);
    hood.for_range(0, hood.total, [&](const std::vector<Location>& out, const std::vector<Location>& in) {
      ++step.candidates;
      SwapMove m = evaluate_swap(instance, current, index, out, in);
      if (clears_threshold(m.delta, current.total, config)) {
        step.move = std::move(m);
        return false;
      }
      return true;
    });
    return step;
  }
  ScanResult scan = scan_best(instance, current, index, rho, config.jobs);
  step.candidates = scan.candidates;
  if (scan.best && clears_threshold(scan.best->delta, current.total, config)) step.move = std::move(scan.best);
  return step;
}

StepResult best_improvement_step(const Instance& instance, const Solution& current, const SearchConfig& config) {
  return best_improvement_step(instance, current, build_index(instance, current.destinations), config);
}

SearchResult run(const Instance& instance, const SearchConfig& config) {
  config.validate();
  instance.validate();
  if (instance.k() == 0) throw InvalidInput("instance has no facilities");

  SearchResult result;
  result.rho_used = clamp_rho(instance, config.rho);
  if (result.rho_used != config.rho) {
    result.warnings.push_back("rho clamped from " + std::to_string(config.rho) + " to " +
                              std::to_string(result.rho_used) + " (min(k, n - k))");
  }
  SearchConfig effective = config;
  effective.rho = result.rho_used;

  Solution current = solution_from_set(instance, initial_set(instance, config));
  NearestIndex index = build_index(instance, current.destinations);
  using Clock = std::chrono::steady_clock;

  for (std::int64_t iter = 1;; ++iter) {
    const auto started = Clock::now();
    StepResult step = best_improvement_step(instance, current, index, effective);
    if (!step.move) {
      result.terminated = true;
      break;
    }
    if (iter > config.max_iters) {
      result.hit_iteration_cap = true;
      break;
    }
    const SwapMove& move = *step.move;
    const auto next_set = apply_swap(current.destinations, move.out, move.in);
    Solution next = solution_from_set(instance, next_set);
    if (move.delta != -kInf && next.total != sat_add(current.total, move.delta)) {
      throw std::logic_error("swap delta disagrees with re-evaluation");
    }
    TraceEntry entry;
    entry.iter = iter;
    entry.out = move.out;
    entry.in = move.in;
    entry.delta = move.delta;
    entry.total_before = current.total;
    entry.total_after = next.total;
    entry.candidates = step.candidates;
    if (config.record_timing) {
      entry.millis = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
    }
    result.trace.entries.push_back(std::move(entry));
    index = update_index(instance, index, next.destinations, move.out, move.in);
    current = std::move(next);
  }
  result.solution = std::move(current);
  return result;
}

LocalOptCertificate certify_local_optimum(const Instance& instance, const Solution& solution, int rho, int jobs) {
  LocalOptCertificate cert;
  cert.rho = clamp_rho(instance, rho);
  const auto index = build_index(instance, solution.destinations);
  ScanResult scan = scan_best(instance, solution, index, cert.rho, jobs);
  cert.candidates = scan.candidates;
  cert.best = std::move(scan.best);
  cert.certified = !cert.best || cert.best->delta >= 0;
  return cert;
}

}  // namespace mfl
