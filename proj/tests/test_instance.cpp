#include <doctest.h>

#include "helpers.hpp"
#include "mfl/generators.hpp"
#include "mfl/instance.hpp"
#include "mfl/matching.hpp"

using namespace mfl;
using testing::line_instance;

TEST_CASE("a facility that stays put next to its client costs nothing") {
  const auto inst = line_instance({0, 3}, {0}, {0});
  const auto sol = evaluate(inst, std::vector<Location>{0});
  CHECK(sol.matching_cost == 0);
  CHECK(sol.assignment_cost == 0);
  CHECK(sol.total == 0);
  CHECK(sol.sigma == std::vector<Location>{0});
}

TEST_CASE("trap instance totals for p = 1") {
  const auto inst = gen_locality_gap(1, 1000, 10'000'000'000);
  const auto opt = evaluate(inst, locality_gap_optimum(1));
  CHECK(opt.matching_cost == 0);
  CHECK(opt.assignment_cost == 2);
  CHECK(opt.total == 2);

  const auto trap = solution_from_set(inst, locality_gap_trap(1));
  CHECK(trap.matching_cost == 2000);
  CHECK(trap.assignment_cost == 0);
  CHECK(trap.total == 2000);
}

TEST_CASE("weights and demands scale the two cost parts") {
  auto inst = line_instance({0, 5, 9}, {0}, {2});
  inst.facilities[0].weight = 3;
  inst.clients[0].demand = 2;
  const auto sol = evaluate(inst, std::vector<Location>{1});
  CHECK(sol.matching_cost == 15);
  CHECK(sol.assignment_cost == 8);
  CHECK(sol.total == 23);
}

TEST_CASE("a destination vector of the wrong length is rejected") {
  const auto inst = line_instance({0, 1, 2}, {0, 1}, {2});
  CHECK_THROWS_AS(evaluate(inst, std::vector<Location>{0}), InvalidInput);
  CHECK_THROWS_AS(evaluate(inst, std::vector<Location>{0, 7}), InvalidInput);
}

TEST_CASE("duplicate destinations are canonicalized") {
  const auto inst = line_instance({0, 1, 2, 3}, {1, 2}, {0});
  // Facility 1 collides at 1; its initial location 2 is free.
  CHECK(canonicalize_destinations(inst, std::vector<Location>{1, 1}) == std::vector<Location>{1, 2});
  // Facility 1 collides at 2 which is also its initial location: lowest free is 0.
  CHECK(canonicalize_destinations(inst, std::vector<Location>{2, 2}) == std::vector<Location>{2, 0});
  const auto sol = evaluate(inst, std::vector<Location>{3, 3});
  CHECK(sol.destinations == std::vector<Location>{3, 2});
}

TEST_CASE("nearest location ties go to the lowest index") {
  const auto inst = line_instance({0, 10, 5}, {0, 1}, {2});
  CHECK(nearest_location(inst, std::vector<Location>{1, 0}, 2) == 0);
  const auto sol = evaluate(inst, std::vector<Location>{1, 0});
  CHECK(sol.sigma == std::vector<Location>{0});
}

TEST_CASE("unreachable clients propagate INF") {
  const Metric m = metric_closure(3, {{0, 1, 1}});
  const auto inst = make_instance(m, {{0, 1}}, {{2, 1}});
  const auto sol = evaluate(inst, std::vector<Location>{0});
  CHECK(sol.assignment_cost == kInf);
  CHECK(sol.total == kInf);
  // Zero demand on an unreachable client contributes nothing.
  auto zero = inst;
  zero.clients[0].demand = 0;
  CHECK(evaluate(zero, std::vector<Location>{0}).total == 0);
}

TEST_CASE("assignment cost never increases when a location is added") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = testing::small_random(seed, 10, 3, {1, 3}, {1, 3});
    std::vector<Location> open{0};
    Cost prev = assignment_cost(inst, open);
    for (Location v = 1; v < inst.n(); ++v) {
      open.push_back(v);
      const Cost now = assignment_cost(inst, open);
      CHECK(now <= prev);
      prev = now;
    }
  }
}

TEST_CASE("instance validation") {
  auto inst = line_instance({0, 1}, {0}, {1});
  CHECK_NOTHROW(inst.validate());
  auto bad = inst;
  bad.facilities.push_back({1, 1});
  bad.facilities.push_back({0, 1});
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = inst;
  bad.clients[0].loc = 5;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad = inst;
  bad.facilities[0].weight = -1;
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}
