#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "mfl/exact.hpp"
#include "mfl/generators.hpp"
#include "mfl/local_search.hpp"
#include "mfl/matching.hpp"
#include "oracles.hpp"

using namespace mfl;

namespace {

const Cost kBig = 10'000'000'000;

SearchConfig quiet(int rho) {
  SearchConfig cfg;
  cfg.rho = rho;
  cfg.record_timing = false;
  return cfg;
}

}  // namespace

TEST_CASE("neighborhood size formula") {
  CHECK(neighborhood_size(5, 2, 1) == 6);
  CHECK(neighborhood_size(5, 2, 2) == 6 + 3);
  CHECK(neighborhood_size(9, 3, 2) == 3 * 6 + 3 * 15);
  CHECK(neighborhood_size(4, 4, 3) == 0);
}

TEST_CASE("no improving move from a global optimum") {
  const auto inst = testing::line_instance({0, 5, 11}, {0}, {0});
  const auto sol = solution_from_set(inst, std::vector<Location>{0});
  const auto step = best_improvement_step(inst, sol, quiet(1));
  CHECK_FALSE(step.move.has_value());
  CHECK(step.candidates == 2);
}

TEST_CASE("no improving move from the p = 4 trap with rho = 4") {
  const auto inst = gen_locality_gap(4, 1000, kBig);
  const auto sol = solution_from_set(inst, locality_gap_trap(4));
  CHECK(sol.total == 5000);
  const auto step = best_improvement_step(inst, sol, quiet(4));
  CHECK_FALSE(step.move.has_value());
  CHECK(step.candidates == neighborhood_size(10, 5, 4));
}

TEST_CASE("the best step matches exhaustive search including tie-breaks") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomSpec spec;
    spec.n = 9;
    spec.k = 3;
    spec.clients = 6;
    spec.coord_range = seed % 2 ? 8 : 60;
    spec.weight_range = {1, 2};
    spec.seed = seed;
    const auto inst = gen_random(spec);
    const auto sol = solution_from_set(inst, std::vector<Location>{0, 1, 2});
    for (int rho = 1; rho <= 2; ++rho) {
      const auto step = best_improvement_step(inst, sol, quiet(rho));
      const auto [expected, count] = oracle::best_move(inst, sol.destination_set(), rho, sol.total);
      CHECK(step.candidates == count);
      CHECK(count == neighborhood_size(9, 3, rho));
      if (expected.delta < 0) {
        REQUIRE(step.move.has_value());
        CHECK(step.move->delta == expected.delta);
        CHECK(step.move->out == expected.out);
        CHECK(step.move->in == expected.in);
      } else {
        CHECK_FALSE(step.move.has_value());
      }
    }
  }
}

TEST_CASE("parallel and serial scans agree") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    RandomSpec spec;
    spec.n = 11;
    spec.k = 4;
    spec.clients = 9;
    spec.coord_range = 10;
    spec.seed = seed;
    const auto inst = gen_random(spec);
    auto serial = quiet(2);
    auto parallel = quiet(2);
    parallel.jobs = 4;
    const auto a = run(inst, serial);
    const auto b = run(inst, parallel);
    CHECK(a.solution == b.solution);
    REQUIRE(a.trace.entries.size() == b.trace.entries.size());
    for (std::size_t i = 0; i < a.trace.entries.size(); ++i) {
      CHECK(a.trace.entries[i].out == b.trace.entries[i].out);
      CHECK(a.trace.entries[i].in == b.trace.entries[i].in);
      CHECK(a.trace.entries[i].delta == b.trace.entries[i].delta);
    }
  }
}

TEST_CASE("search starting co-located with the clients stops at once") {
  const auto inst = testing::line_instance({0, 2, 7, 9}, {1, 2}, {1, 2});
  const auto result = run(inst, quiet(1));
  CHECK(result.trace.entries.empty());
  CHECK(result.solution.total == 0);
  CHECK(result.terminated);
}

TEST_CASE("search from the p = 4 trap makes no move") {
  const auto inst = gen_locality_gap(4, 1000, kBig);
  auto cfg = quiet(4);
  cfg.init = InitKind::List;
  cfg.init_list = locality_gap_trap(4);
  const auto result = run(inst, cfg);
  CHECK(result.trace.entries.empty());
  CHECK(result.solution.total == 5000);
  CHECK(result.terminated);
}

TEST_CASE("local optima are certified and never beat the optimum") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = testing::small_random(seed, 9, 3, {1, 3}, {1, 3});
    const auto result = run(inst, quiet(1));
    REQUIRE(result.terminated);
    const auto [best, count] = oracle::best_move(inst, result.solution.destination_set(), 1, result.solution.total);
    CHECK(best.delta >= 0);
    CHECK(result.solution.total == oracle::set_cost(inst, result.solution.destination_set()));
    CHECK(result.solution.total >= oracle::optimum(inst).first);
    CHECK(certify_local_optimum(inst, result.solution, 1).certified);
    // Totals strictly decrease along the trace.
    Cost prev = kInf;
    for (const auto& e : result.trace.entries) {
      CHECK(e.delta < 0);
      CHECK(e.total_after == e.total_before + e.delta);
      CHECK(e.total_before < prev);
      prev = e.total_before;
    }
  }
}

TEST_CASE("search is deterministic for a fixed seed") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomSpec spec;
    spec.n = 12;
    spec.k = 4;
    spec.seed = seed;
    const auto inst = gen_random(spec);
    auto cfg = quiet(2);
    cfg.init = InitKind::RandomK;
    cfg.seed = seed + 100;
    const auto a = run(inst, cfg);
    const auto b = run(inst, cfg);
    CHECK(a.solution == b.solution);
    CHECK(a.trace.entries.size() == b.trace.entries.size());
  }
}

TEST_CASE("certificate on the p = 1 instance") {
  const auto inst = gen_locality_gap(1, 1000, kBig);
  const auto trap = solution_from_set(inst, locality_gap_trap(1));
  const auto cert = certify_local_optimum(inst, trap, 1);
  CHECK(cert.certified);
  CHECK(cert.candidates == 4);
  const auto opt = solution_from_set(inst, locality_gap_optimum(1));
  CHECK(certify_local_optimum(inst, opt, 2).certified);
  // A single client location paired with a facility location improves.
  const auto mixed = solution_from_set(inst, std::vector<Location>{0, 3});
  const auto cert2 = certify_local_optimum(inst, mixed, 1);
  CHECK_FALSE(cert2.certified);
  REQUIRE(cert2.best.has_value());
  CHECK(cert2.best->delta < 0);
}

TEST_CASE("epsilon threshold rejects small improvements") {
  // Total 24; moving onto the client saves 12, which is below 1 * 24.
  auto inst = testing::line_instance({0, 1, 12}, {0}, {2});
  inst.clients[0].demand = 2;
  const auto sol = solution_from_set(inst, std::vector<Location>{0});
  CHECK(sol.total == 24);
  auto cfg = quiet(1);
  const auto plain = best_improvement_step(inst, sol, cfg);
  REQUIRE(plain.move.has_value());
  CHECK(plain.move->delta == -12);
  cfg.epsilon_num = 1;
  cfg.epsilon_den = 2;
  CHECK(best_improvement_step(inst, sol, cfg).move.has_value());
  cfg.epsilon_num = 51;
  cfg.epsilon_den = 100;
  CHECK_FALSE(best_improvement_step(inst, sol, cfg).move.has_value());
}

TEST_CASE("the iteration cap is reported") {
  // Two improving moves exist in sequence; the cap allows only one.
  auto inst = testing::line_instance({0, 1, 30, -30}, {0, 1}, {2, 3});
  for (auto& c : inst.clients) c.demand = 2;
  auto cfg = quiet(1);
  const auto full = run(inst, cfg);
  CHECK(full.trace.entries.size() == 2);
  cfg.max_iters = 1;
  const auto capped = run(inst, cfg);
  CHECK(capped.hit_iteration_cap);
  CHECK_FALSE(capped.terminated);
  CHECK(capped.trace.entries.size() == 1);
}

TEST_CASE("rho is clamped with a warning") {
  const auto inst = testing::line_instance({0, 1, 2}, {0}, {2});
  CHECK(clamp_rho(inst, 5) == 1);
  auto cfg = quiet(5);
  const auto result = run(inst, cfg);
  CHECK(result.rho_used == 1);
  CHECK_FALSE(result.warnings.empty());
}

TEST_CASE("invalid configurations are rejected") {
  const auto inst = testing::line_instance({0, 1, 2}, {0}, {2});
  auto cfg = quiet(0);
  CHECK_THROWS_AS(run(inst, cfg), InvalidInput);
  cfg = quiet(1);
  cfg.epsilon_num = -1;
  CHECK_THROWS_AS(run(inst, cfg), InvalidInput);
  cfg = quiet(1);
  cfg.max_iters = 0;
  CHECK_THROWS_AS(run(inst, cfg), InvalidInput);
}

TEST_CASE("first improvement also reaches a local optimum") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inst = testing::small_random(seed, 9, 3, {1, 2}, {1, 2});
    auto cfg = quiet(1);
    cfg.strategy = Strategy::FirstImprovement;
    const auto result = run(inst, cfg);
    CHECK(result.terminated);
    CHECK(certify_local_optimum(inst, result.solution, 1).certified);
  }
}

TEST_CASE("initializations") {
  RandomSpec spec;
  spec.n = 10;
  spec.k = 3;
  spec.seed = 4;
  const auto inst = gen_random(spec);
  SearchConfig cfg;
  auto at = initial_set(inst, cfg);
  std::vector<Location> expected;
  for (const auto& f : inst.facilities) expected.push_back(f.loc);
  std::sort(expected.begin(), expected.end());
  std::sort(at.begin(), at.end());
  CHECK(at == expected);
  cfg.init = InitKind::Greedy;
  CHECK(initial_set(inst, cfg).size() == 3);
  cfg.init = InitKind::List;
  cfg.init_list = {0, 0, 1};
  CHECK_THROWS_AS(initial_set(inst, cfg), InvalidInput);
}
