#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "mfl/cli.hpp"
#include "mfl/generators.hpp"
#include "mfl/io.hpp"
#include "mfl/matching.hpp"

using namespace mfl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("mfl_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& file, const std::string& text) { std::ofstream(file, std::ios::binary) << text; }

io::json load(const std::string& file) { return io::json::parse(slurp(file)); }

}  // namespace

TEST_CASE("instance JSON round trips") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto inst = testing::small_random(seed, 12, 4, {1, 5}, {0, 5});
    if (seed % 3 == 0) inst.scale = 100;
    const auto back = io::instance_from_json(io::json::parse(io::dump(io::instance_to_json(inst))));
    CHECK(back == inst);
  }
  const auto gap = gen_locality_gap(2, 1000, 10'000'000'000);
  CHECK(io::instance_from_json(io::instance_to_json(gap)) == gap);
}

TEST_CASE("instance JSON accepts edges, INF and scaled decimals") {
  const auto doc = io::json::parse(R"({
    "version": 1, "n": 3, "scale": 10,
    "assign_edges": [[0, 1, 1.5], [1, 2, 2]],
    "facilities": [{"loc": 0}],
    "clients": [{"loc": 2, "demand": 3}]
  })");
  const auto inst = io::instance_from_json(doc);
  CHECK(inst.assign(0, 2) == 35);
  CHECK(inst.facilities[0].weight == 1);
  CHECK(inst.clients[0].demand == 3);

  const auto inf = io::instance_from_json(io::json::parse(R"({
    "n": 2, "assign_matrix": [[0, "INF"], ["INF", 0]], "facilities": [{"loc": 0}], "clients": [{"loc": 1}]
  })"));
  CHECK(inf.assign(0, 1) == kInf);
  CHECK(evaluate(inf, std::vector<Location>{0}).total == kInf);
  CHECK(io::solution_to_json(evaluate(inf, std::vector<Location>{0}))["total"] == "INF");
}

TEST_CASE("malformed instance JSON is rejected") {
  auto bad = [](const char* text) { return io::instance_from_json(io::json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"n": 2, "facilities": []})"), InvalidInput);
  CHECK_THROWS_AS(bad(R"({"version": 2, "n": 1, "assign_matrix": [[0]], "facilities": []})"), InvalidInput);
  CHECK_THROWS_AS(bad(R"({"n": 2, "scale": 10, "assign_edges": [[0, 1, 0.15]], "facilities": [{"loc": 0}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(bad(R"({"n": 3, "assign_matrix": [[0, 1, 5], [1, 0, 1], [5, 1, 0]], "facilities": [{"loc": 0}]})"),
                  InvalidInput);
  CHECK_THROWS_AS(bad(R"({"n": 2, "assign_edges": [[0, 1, -3]], "facilities": [{"loc": 0}]})"), InvalidInput);
  CHECK_THROWS_AS(bad(R"({"n": 2, "assign_edges": [[0, 1, 3]], "facilities": [{"loc": 4}]})"), InvalidInput);
}

TEST_CASE("solution JSON") {
  const auto inst = testing::line_instance({0, 4, 9}, {0, 1}, {2});
  const auto sol = solution_from_set(inst, std::vector<Location>{0, 2});
  const auto doc = io::solution_to_json(sol);
  CHECK(doc["destinations"] == io::json({0, 2}));
  CHECK(doc["matching_cost"] == 5);
  CHECK(doc["assignment_cost"] == 0);
  CHECK(doc["total"] == 5);
  CHECK(io::solution_from_json(inst, doc) == sol);
}

TEST_CASE("trace CSV layout") {
  SearchTrace trace;
  trace.entries.push_back({1, {3, 5}, {0, 7}, -4, 10, 6, 12, 0});
  std::ostringstream out;
  io::write_trace_csv(out, trace);
  CHECK(out.str() == "iter,delta,total_before,total_after,X,Y,candidates,millis\n1,-4,10,6,3 5,0 7,12,0\n");
}

TEST_CASE("cli: invalid swap size exits with failure") {
  TempDir dir;
  spit(dir / "i.json", io::dump(io::instance_to_json(testing::line_instance({0, 1}, {0}, {1}))));
  CHECK(cli::run({"solve", "--in", dir / "i.json", "--swaps", "0", "--out", dir / "s.json"}) == cli::kFailure);
  CHECK(cli::run({"solve", "--in", dir / "missing.json"}) == cli::kFailure);
  CHECK(cli::run({"frobnicate"}) == cli::kFailure);
}

TEST_CASE("cli: generate a trap, solve it exactly and from the trap") {
  TempDir dir;
  REQUIRE(cli::run({"gen", "locality-gap", "--p", "1", "--D", "7", "--out", dir / "g.json"}) == cli::kOk);
  REQUIRE(cli::run({"exact", "--in", dir / "g.json", "--out", dir / "o.json"}) == cli::kOk);
  CHECK(load(dir / "o.json")["total"] == 2);
  REQUIRE(cli::run({"solve", "--in", dir / "g.json", "--init", "list", "--init-list", "2,3", "--swaps", "1", "--out",
                    dir / "s.json", "--trace", dir / "t.csv"}) == cli::kOk);
  CHECK(load(dir / "s.json")["total"] == 14);
  CHECK(slurp(dir / "t.csv") == "iter,delta,total_before,total_after,X,Y,candidates,millis\n");
  const auto manifest = load(dir / "s.json.manifest.json");
  CHECK(manifest["command"] == "solve");
  CHECK(manifest["exit_code"] == 0);
  CHECK(manifest["inputs"].size() == 1);
}

TEST_CASE("cli: solve output is byte-identical across runs") {
  TempDir dir;
  REQUIRE(cli::run({"gen", "random", "--n", "12", "--k", "4", "--clients", "9", "--seed", "5", "--out",
                    dir / "r.json"}) == cli::kOk);
  for (const char* name : {"a", "b"}) {
    REQUIRE(cli::run({"solve", "--in", dir / "r.json", "--swaps", "2", "--no-timing", "--jobs", "2", "--out",
                      dir / (std::string(name) + ".json"), "--trace", dir / (std::string(name) + ".csv")}) == cli::kOk);
  }
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("cli: verify a solution against itself") {
  TempDir dir;
  REQUIRE(cli::run({"gen", "random", "--n", "8", "--k", "3", "--clients", "6", "--seed", "1", "--out",
                    dir / "r.json"}) == cli::kOk);
  REQUIRE(cli::run({"exact", "--in", dir / "r.json", "--out", dir / "o.json"}) == cli::kOk);
  CHECK(cli::run({"verify", "--in", dir / "r.json", "--local", dir / "o.json", "--reference", dir / "o.json",
                  "--reference-optimal", "--out", dir / "rep.json"}) == cli::kOk);
  const auto report = load(dir / "rep.json");
  CHECK(report["pass"] == true);
  CHECK(report["checks"].size() > 0);
  // Without a reference the optimum is computed.
  CHECK(cli::run({"verify", "--in", dir / "r.json", "--local", dir / "o.json", "--out", dir / "rep2.json"}) ==
        cli::kOk);
}

TEST_CASE("cli: exact refuses oversized instances") {
  TempDir dir;
  REQUIRE(cli::run({"gen", "random", "--n", "30", "--k", "15", "--clients", "4", "--out", dir / "big.json"}) ==
          cli::kOk);
  CHECK(cli::run({"exact", "--in", dir / "big.json", "--max-subsets", "1000", "--out", dir / "o.json"}) ==
        cli::kSubsetLimit);
}

TEST_CASE("cli: an iteration cap yields the not-certified code") {
  TempDir dir;
  auto inst = testing::line_instance({0, 1, 30, -30}, {0, 1}, {2, 3});
  for (auto& c : inst.clients) c.demand = 2;
  spit(dir / "i.json", io::dump(io::instance_to_json(inst)));
  CHECK(cli::run({"solve", "--in", dir / "i.json", "--max-iters", "1", "--out", dir / "s.json"}) ==
        cli::kNotCertified);
}

TEST_CASE("cli: bench ratios are at least one") {
  TempDir dir;
  REQUIRE(cli::run({"bench", "--count", "30", "--n", "8", "--k", "3", "--clients", "6", "--rho", "1,2", "--out",
                    dir / "b.csv"}) == cli::kOk);
  std::istringstream csv(slurp(dir / "b.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "instance,rho,local_total,exact_total,ratio,iterations,wall_ms");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    CHECK(std::stoll(cells[2]) >= std::stoll(cells[3]));
    CHECK(std::stod(cells[4]) >= 1.0);
  }
  CHECK(rows == 60);
}
