#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "mfl/generators.hpp"
#include "mfl/instance.hpp"

namespace testing {

/// Points on a line with |x - y| distances.
inline mfl::Metric line_metric(const std::vector<mfl::Cost>& coords) {
  const int n = static_cast<int>(coords.size());
  std::vector<mfl::Cost> entries;
  for (auto a : coords) {
    for (auto b : coords) entries.push_back(std::llabs(a - b));
  }
  return mfl::Metric(n, std::move(entries));
}

inline mfl::Instance line_instance(const std::vector<mfl::Cost>& coords, const std::vector<mfl::Location>& facilities,
                                   const std::vector<mfl::Location>& clients) {
  std::vector<mfl::Facility> fs;
  for (auto loc : facilities) fs.push_back({loc, 1});
  std::vector<mfl::Client> cs;
  for (auto loc : clients) cs.push_back({loc, 1});
  return mfl::make_instance(line_metric(coords), fs, cs);
}

/// Small random instance: n in [k+1, max_n], k in [1, max_k].
inline mfl::Instance small_random(std::uint64_t seed, int max_n, int max_k, std::pair<mfl::Cost, mfl::Cost> weights,
                                  std::pair<mfl::Cost, mfl::Cost> demands) {
  std::mt19937_64 rng(seed * 7919 + 13);
  mfl::RandomSpec spec;
  spec.k = std::uniform_int_distribution<int>(1, max_k)(rng);
  spec.n = std::uniform_int_distribution<int>(spec.k + 1, max_n)(rng);
  spec.clients = std::uniform_int_distribution<int>(1, spec.n)(rng);
  spec.topology = (seed % 3 == 2) ? mfl::Topology::Graph : mfl::Topology::Euclidean;
  spec.coord_range = 50;
  spec.edge_cost_max = 30;
  spec.weight_range = weights;
  spec.demand_range = demands;
  spec.seed = seed;
  return mfl::gen_random(spec);
}

}  // namespace testing
