#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "mfl/generators.hpp"
#include "mfl/matching.hpp"
#include "oracles.hpp"

using namespace mfl;
using Matrix = std::vector<std::vector<Cost>>;

namespace {

Matrix random_matrix(std::mt19937_64& rng, int k, Cost hi) {
  Matrix a(k, std::vector<Cost>(k));
  for (auto& row : a) {
    for (auto& x : row) x = static_cast<Cost>(rng() % static_cast<std::uint64_t>(hi + 1));
  }
  return a;
}

}  // namespace

TEST_CASE("matching on a 1x1 matrix") {
  const auto r = min_cost_perfect_matching({{7}});
  CHECK(r.cost == 7);
  CHECK(r.assignment == std::vector<int>{0});
}

TEST_CASE("matching prefers the anti-diagonal when it is cheaper") {
  const auto r = min_cost_perfect_matching({{5, 1}, {1, 5}});
  CHECK(r.cost == 2);
  CHECK(r.assignment == std::vector<int>{1, 0});
}

TEST_CASE("matching ties return the lexicographically smallest assignment") {
  const auto r = min_cost_perfect_matching({{1, 1}, {1, 1}});
  CHECK(r.cost == 2);
  CHECK(r.assignment == std::vector<int>{0, 1});
}

TEST_CASE("matching on an empty matrix") {
  const auto r = min_cost_perfect_matching({});
  CHECK(r.cost == 0);
  CHECK(r.assignment.empty());
}

TEST_CASE("matching rejects malformed input") {
  CHECK_THROWS_AS(min_cost_perfect_matching({{1, 2}}), InvalidInput);
  CHECK_THROWS_AS(min_cost_perfect_matching({{-1}}), InvalidInput);
}

TEST_CASE("matching agrees with permutation enumeration") {
  std::mt19937_64 rng(2024);
  for (int k = 1; k <= 7; ++k) {
    for (int round = 0; round < 60; ++round) {
      const Cost hi = (round % 3 == 0) ? 3 : 1000;
      const auto a = random_matrix(rng, k, hi);
      const auto r = min_cost_perfect_matching(a);
      const Cost expected = oracle::permutation_min(a);
      CHECK(r.cost == expected);
      CHECK(oracle::assignment_of(a, r.assignment) == expected);
      CHECK(min_cost_perfect_matching_cost(a) == expected);
    }
  }
}

TEST_CASE("matching handles INF entries") {
  const Matrix a{{kInf, 4}, {3, kInf}};
  CHECK(min_cost_perfect_matching(a).cost == 7);
  const Matrix blocked{{kInf, kInf}, {1, 1}};
  CHECK(min_cost_perfect_matching(blocked).cost == kInf);
  std::mt19937_64 rng(5);
  for (int round = 0; round < 100; ++round) {
    auto m = random_matrix(rng, 5, 50);
    for (auto& row : m) {
      for (auto& x : row) {
        if (rng() % 4 == 0) x = kInf;
      }
    }
    CHECK(min_cost_perfect_matching(m).cost == oracle::permutation_min(m));
  }
}

TEST_CASE("scaling a matrix scales the optimum") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 50; ++round) {
    const int k = 2 + static_cast<int>(rng() % 6);
    auto a = random_matrix(rng, k, 200);
    const Cost base = min_cost_perfect_matching(a).cost;
    const Cost lambda = 1 + static_cast<Cost>(rng() % 9);
    for (auto& row : a) {
      for (auto& x : row) x *= lambda;
    }
    CHECK(min_cost_perfect_matching(a).cost == lambda * base);
  }
}

TEST_CASE("permuting columns permutes the assignment") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 50; ++round) {
    const int k = 2 + static_cast<int>(rng() % 6);
    const auto a = random_matrix(rng, k, 1'000'000);  // wide range, ties unlikely
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix b(k, std::vector<Cost>(k));
    for (int r = 0; r < k; ++r) {
      for (int c = 0; c < k; ++c) b[r][perm[c]] = a[r][c];
    }
    const auto ra = min_cost_perfect_matching(a);
    const auto rb = min_cost_perfect_matching(b);
    CHECK(ra.cost == rb.cost);
    if (oracle::permutation_min(a) == ra.cost) {
      bool unique = true;
      std::vector<int> p(k);
      std::iota(p.begin(), p.end(), 0);
      int optimal = 0;
      do {
        if (oracle::assignment_of(a, p) == ra.cost) ++optimal;
      } while (std::next_permutation(p.begin(), p.end()));
      unique = optimal == 1;
      if (unique) {
        for (int r = 0; r < k; ++r) CHECK(rb.assignment[r] == perm[ra.assignment[r]]);
      }
    }
  }
}

TEST_CASE("movement onto the initial locations is free") {
  const auto inst = testing::line_instance({0, 4, 9, 13}, {2, 0}, {1});
  const auto mv = movement_cost(inst, std::vector<Location>{0, 2});
  CHECK(mv.cost == 0);
  CHECK(mv.destinations == std::vector<Location>{2, 0});
}

TEST_CASE("movement onto the trap set of the p = 1 instance") {
  const auto inst = gen_locality_gap(1, 1000, 10'000'000'000);
  const auto mv = movement_cost(inst, locality_gap_trap(1));
  CHECK(mv.cost == 2000);
  CHECK(mv.destinations == std::vector<Location>{3, 2});
}

TEST_CASE("movement cost agrees with brute force on random instances") {
  std::mt19937_64 rng(99);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    RandomSpec spec;
    spec.n = 8;
    spec.k = 4;
    spec.clients = 3;
    spec.weight_range = {1, 4};
    spec.seed = seed;
    const auto inst = gen_random(spec);
    std::vector<Location> all(inst.n());
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<Location> targets(all.begin(), all.begin() + 4);
    Matrix a(4, std::vector<Cost>(4));
    for (int i = 0; i < 4; ++i) {
      for (int t = 0; t < 4; ++t) a[i][t] = inst.facilities[i].weight * inst.move(inst.facilities[i].loc, targets[t]);
    }
    const auto mv = movement_cost(inst, targets);
    CHECK(mv.cost == oracle::permutation_min(a));
    CHECK(movement_cost_value(inst, targets) == mv.cost);
    Cost realized = 0;
    for (int i = 0; i < 4; ++i) realized += inst.facilities[i].weight * inst.move(inst.facilities[i].loc, mv.destinations[i]);
    CHECK(realized == mv.cost);
    auto sorted_dest = mv.destinations;
    std::sort(sorted_dest.begin(), sorted_dest.end());
    std::sort(targets.begin(), targets.end());
    CHECK(sorted_dest == targets);
  }
}

TEST_CASE("movement rejects a target list of the wrong size") {
  const auto inst = testing::line_instance({0, 1, 2}, {0, 1}, {2});
  CHECK_THROWS_AS(movement_cost(inst, std::vector<Location>{0}), InvalidInput);
  CHECK_THROWS_AS(solution_from_set(inst, std::vector<Location>{1, 1}), InvalidInput);
}
