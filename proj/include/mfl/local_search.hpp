#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mfl/evaluator.hpp"
#include "mfl/instance.hpp"

namespace mfl {

enum class InitKind { AtInitial, RandomK, Greedy, List };
enum class Strategy { BestImprovement, FirstImprovement };

struct SearchConfig {
  int rho = 1;
  std::int64_t epsilon_num = 0;
  std::int64_t epsilon_den = 1;
  std::int64_t max_iters = 1'000'000;
  InitKind init = InitKind::AtInitial;
  std::vector<Location> init_list;  // used when init == List
  std::uint64_t seed = 0;
  int jobs = 1;
  Strategy strategy = Strategy::BestImprovement;
  bool record_timing = true;

  /// Throws InvalidInput unless rho >= 1, epsilon >= 0 and max_iters >= 1.
  void validate() const;
};

struct TraceEntry {
  std::int64_t iter = 0;
  std::vector<Location> out;
  std::vector<Location> in;
  Cost delta = 0;
  Cost total_before = 0;
  Cost total_after = 0;
  std::uint64_t candidates = 0;
  std::int64_t millis = 0;  // zero when timing is off
};

struct SearchTrace {
  std::vector<TraceEntry> entries;
};

struct SearchResult {
  Solution solution;
  SearchTrace trace;
  int rho_used = 0;
  bool hit_iteration_cap = false;
  /// Terminated because no move met the threshold. With epsilon = 0 this is
  /// an exact local-optimality certificate.
  bool terminated = false;
  std::vector<std::string> warnings;
};

/// Number of (X, Y) pairs with |X| = |Y| in 1..rho: sum C(k,q) C(n-k,q).
std::uint64_t neighborhood_size(int n, int k, int rho);

/// Effective swap size: rho clamped to min(k, n - k).
int clamp_rho(const Instance& instance, int rho);

/// Initial destination set for the configured initialization.
std::vector<Location> initial_set(const Instance& instance, const SearchConfig& config);

struct StepResult {
  std::optional<SwapMove> move;
  std::uint64_t candidates = 0;
};

/// Scans the whole rho-swap neighborhood and returns the most improving move
/// if it clears the epsilon threshold. Ties go to the lexicographically
/// smallest (sorted out, sorted in). Parallel and serial scans agree exactly.
StepResult best_improvement_step(const Instance& instance, const Solution& current,
                                 const NearestIndex& index, const SearchConfig& config);

/// Convenience overload that builds the index.
StepResult best_improvement_step(const Instance& instance, const Solution& current,
                                 const SearchConfig& config);

SearchResult run(const Instance& instance, const SearchConfig& config);

struct LocalOptCertificate {
  int rho = 0;
  std::uint64_t candidates = 0;
  std::optional<SwapMove> best;  // empty neighborhood -> nullopt
  bool certified = false;        // no candidate has negative delta
};

LocalOptCertificate certify_local_optimum(const Instance& instance, const Solution& solution,
                                          int rho, int jobs = 1);

}  // namespace mfl
