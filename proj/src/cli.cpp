#include "mfl/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "mfl/analysis.hpp"
#include "mfl/exact.hpp"
#include "mfl/generators.hpp"
#include "mfl/io.hpp"
#include "mfl/local_search.hpp"

namespace mfl::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

using io::json;

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

int default_jobs() {
  if (const char* env = std::getenv("MFL_JOBS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::pair<std::int64_t, std::int64_t> parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return {std::stoll(text), 1};
    return {std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
  } catch (const std::exception&) {
    throw InvalidInput("cannot parse fraction \"" + text + "\"");
  }
}

std::pair<Cost, Cost> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const Cost v = std::stoll(text);
      return {v, v};
    }
    return {std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw InvalidInput("cannot parse range \"" + text + "\" (expected LO:HI)");
  }
}

std::vector<Location> parse_list(const std::string& text) {
  std::vector<Location> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<Location>(std::stol(item)));
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse location list \"" + text + "\"");
    }
  }
  return out;
}

/// Records inputs and outputs of one command and writes the run manifest.
class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> args)
      : command_(std::move(command)), args_(std::move(args)), started_(std::chrono::steady_clock::now()) {}

  void input(const std::string& path, const std::string& bytes) { inputs_.push_back({path, fnv1a(bytes)}); }
  void output(const std::string& path, const std::string& bytes) {
    outputs_.push_back({path, fnv1a(bytes)});
    if (primary_output_.empty()) primary_output_ = path;
  }

  void write(const std::string& manifest_path, int exit_code) const {
    json doc;
    doc["command"] = command_;
    doc["config"] = args_;
    json inputs = json::array();
    for (const auto& [path, hash] : inputs_) inputs.push_back({{"path", path}, {"fnv1a64", hash}});
    doc["inputs"] = std::move(inputs);
    json outputs = json::array();
    for (const auto& [path, hash] : outputs_) outputs.push_back({{"path", path}, {"fnv1a64", hash}});
    doc["outputs"] = std::move(outputs);
    doc["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started_).count();
    doc["tool_version"] = kVersion;
    doc["exit_code"] = exit_code;

    std::string path = manifest_path;
    if (path.empty()) path = (primary_output_.empty() || primary_output_ == "-") ? "" : primary_output_ + ".manifest.json";
    if (path.empty()) {
      std::cerr << io::dump(doc);
    } else {
      write_text(path, io::dump(doc));
    }
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  std::chrono::steady_clock::time_point started_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
  std::string primary_output_;
};

Instance load_instance(const std::string& path, Manifest& manifest) {
  const std::string text = read_text(path);
  manifest.input(path, text);
  try {
    return io::instance_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void emit(const std::string& path, const std::string& text, Manifest& manifest) {
  write_text(path, text);
  manifest.output(path, text);
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  std::string in = "-";
  std::string out = "-";
  std::string trace;
  std::string manifest;
  int swaps = 1;
  std::string eps = "0";
  std::string init = "at-initial";
  std::string init_list;
  std::uint64_t seed = 0;
  std::int64_t max_iters = 1'000'000;
  int jobs = 1;
  std::string strategy = "best";
  bool no_timing = false;
};

int cmd_solve(const SolveArgs& a, Manifest& manifest) {
  const Instance instance = load_instance(a.in, manifest);
  SearchConfig config;
  config.rho = a.swaps;
  std::tie(config.epsilon_num, config.epsilon_den) = parse_fraction(a.eps);
  config.max_iters = a.max_iters;
  config.seed = a.seed;
  config.jobs = a.jobs;
  config.record_timing = !a.no_timing;
  if (a.init == "at-initial") {
    config.init = InitKind::AtInitial;
  } else if (a.init == "random-k") {
    config.init = InitKind::RandomK;
  } else if (a.init == "greedy") {
    config.init = InitKind::Greedy;
  } else if (a.init == "list") {
    config.init = InitKind::List;
    config.init_list = parse_list(a.init_list);
  } else {
    throw InvalidInput("unknown --init " + a.init);
  }
  if (a.strategy == "best") {
    config.strategy = Strategy::BestImprovement;
  } else if (a.strategy == "first") {
    config.strategy = Strategy::FirstImprovement;
  } else {
    throw InvalidInput("unknown --strategy " + a.strategy);
  }

  const SearchResult result = run(instance, config);
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  emit(a.out, io::dump(io::solution_to_json(result.solution)), manifest);
  if (!a.trace.empty()) {
    std::ostringstream csv;
    io::write_trace_csv(csv, result.trace);
    emit(a.trace, csv.str(), manifest);
  }

  if (result.hit_iteration_cap) {
    std::cerr << "not certified locally optimal: iteration cap " << a.max_iters << " reached\n";
    return kNotCertified;
  }
  bool certified = config.epsilon_num == 0 && config.strategy == Strategy::BestImprovement;
  if (!certified) certified = certify_local_optimum(instance, result.solution, config.rho, config.jobs).certified;
  if (!certified) {
    std::cerr << "not certified locally optimal: an improving swap remains below the threshold\n";
    return kNotCertified;
  }
  return kOk;
}

struct ExactArgs {
  std::string in = "-";
  std::string out = "-";
  std::string manifest;
  std::uint64_t max_subsets = kDefaultMaxSubsets;
  int jobs = 1;
};

int cmd_exact(const ExactArgs& a, Manifest& manifest) {
  const Instance instance = load_instance(a.in, manifest);
  const ExactResult result = brute_force_opt(instance, a.max_subsets, a.jobs);
  emit(a.out, io::dump(io::solution_to_json(result.solution)), manifest);
  return kOk;
}

struct GenArgs {
  std::string out = "-";
  std::string manifest;
  // random
  int n = 10;
  int k = 3;
  int clients = 10;
  std::string topology = "euclidean";
  Cost coord_range = 100;
  double density = 0.3;
  Cost edge_max = 100;
  std::string weights = "1:1";
  std::string demands = "1:1";
  std::uint64_t seed = 0;
  // locality-gap
  int p = 1;
  Cost D = 1000;
  Cost M = 10'000'000'000;
  // kmedian
  std::string in;
  Cost multiplier = 1'000'000;
};

int cmd_gen(const std::string& kind, const GenArgs& a, Manifest& manifest) {
  Instance instance;
  if (kind == "random") {
    RandomSpec spec;
    spec.n = a.n;
    spec.k = a.k;
    spec.clients = a.clients;
    if (a.topology == "euclidean") {
      spec.topology = Topology::Euclidean;
    } else if (a.topology == "graph") {
      spec.topology = Topology::Graph;
    } else {
      throw InvalidInput("unknown --topology " + a.topology);
    }
    spec.coord_range = a.coord_range;
    spec.edge_density = a.density;
    spec.edge_cost_max = a.edge_max;
    spec.weight_range = parse_range(a.weights);
    spec.demand_range = parse_range(a.demands);
    spec.seed = a.seed;
    instance = gen_random(spec);
  } else if (kind == "locality-gap") {
    instance = gen_locality_gap(a.p, a.D, a.M);
  } else {
    const Instance source = load_instance(a.in, manifest);
    instance = gen_kmedian_reduction({source.assign, source.clients, a.k}, a.multiplier);
  }
  emit(a.out, io::dump(io::instance_to_json(instance)), manifest);
  return kOk;
}

struct VerifyArgs {
  std::string in;
  std::string local;
  std::string reference;
  std::string out = "-";
  std::string manifest;
  bool reference_optimal = false;
  int t = 2;
  int rho = 1;
  int jobs = 1;
  std::uint64_t max_subsets = kDefaultMaxSubsets;
};

int cmd_verify(const VerifyArgs& a, Manifest& manifest) {
  const Instance instance = load_instance(a.in, manifest);
  const std::string local_text = read_text(a.local);
  manifest.input(a.local, local_text);
  const Solution local = io::solution_from_json(instance, json::parse(local_text));

  analysis::VerifyOptions options;
  options.t = a.t;
  options.rho = a.rho;
  options.jobs = a.jobs;
  Solution reference;
  if (a.reference.empty()) {
    reference = brute_force_opt(instance, a.max_subsets, a.jobs).solution;
    options.reference_is_optimal = true;
  } else {
    const std::string ref_text = read_text(a.reference);
    manifest.input(a.reference, ref_text);
    reference = io::solution_from_json(instance, json::parse(ref_text));
    options.reference_is_optimal = a.reference_optimal;
  }
  const auto report = analysis::verify_all(instance, local, reference, options);
  emit(a.out, io::dump(io::report_to_json(report)), manifest);
  return report.pass() ? kOk : kFailure;
}

struct BenchArgs {
  std::vector<std::string> inputs;
  std::string out = "-";
  std::string manifest;
  int count = 30;
  int n = 10;
  int k = 3;
  int clients = 10;
  std::string topology = "euclidean";
  std::string weights = "1:1";
  std::string demands = "1:1";
  std::string rhos = "1,2";
  std::uint64_t seed = 0;
  int jobs = 1;
  std::uint64_t max_subsets = kDefaultMaxSubsets;
};

std::string ratio_text(Cost local, Cost exact) {
  if (exact == 0) return local == 0 ? "1.000000" : "inf";
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << static_cast<long double>(local) / static_cast<long double>(exact);
  return s.str();
}

int cmd_bench(const BenchArgs& a, Manifest& manifest) {
  std::vector<std::pair<std::string, Instance>> instances;
  if (!a.inputs.empty()) {
    for (const auto& path : a.inputs) instances.emplace_back(path, load_instance(path, manifest));
  } else {
    for (int r = 0; r < a.count; ++r) {
      RandomSpec spec;
      spec.n = a.n;
      spec.k = a.k;
      spec.clients = a.clients;
      spec.topology = a.topology == "graph" ? Topology::Graph : Topology::Euclidean;
      spec.weight_range = parse_range(a.weights);
      spec.demand_range = parse_range(a.demands);
      spec.seed = a.seed + static_cast<std::uint64_t>(r);
      instances.emplace_back("random-" + std::to_string(spec.seed), gen_random(spec));
    }
  }
  const auto rhos = parse_list(a.rhos);
  std::ostringstream csv;
  csv << "instance,rho,local_total,exact_total,ratio,iterations,wall_ms\n";
  for (const auto& [name, instance] : instances) {
    const Cost exact = brute_force_opt(instance, a.max_subsets, a.jobs).solution.total;
    for (Location rho : rhos) {
      SearchConfig config;
      config.rho = rho;
      config.jobs = a.jobs;
      const auto started = std::chrono::steady_clock::now();
      const SearchResult result = run(instance, config);
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
      csv << name << ',' << rho << ',' << result.solution.total << ',' << exact << ','
          << ratio_text(result.solution.total, exact) << ',' << result.trace.entries.size() << ',' << ms << '\n';
    }
  }
  emit(a.out, csv.str(), manifest);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Mobile facility location: local search, exact oracle, generators and proof-structure verifier"};
  app.name("mfl");
  app.require_subcommand(1);
  const int jobs = default_jobs();

  SolveArgs solve_args;
  solve_args.jobs = jobs;
  auto* solve = app.add_subcommand("solve", "rho-swap local search");
  solve->add_option("--in", solve_args.in, "instance JSON ('-' for stdin)");
  solve->add_option("--out", solve_args.out, "solution JSON ('-' for stdout)");
  solve->add_option("--trace", solve_args.trace, "trace CSV path");
  solve->add_option("--manifest", solve_args.manifest, "run manifest path");
  solve->add_option("--swaps", solve_args.swaps, "maximum swap size rho (>= 1)");
  solve->add_option("--eps", solve_args.eps, "improvement threshold NUM/DEN of the current cost");
  solve->add_option("--init", solve_args.init, "at-initial | random-k | greedy | list");
  solve->add_option("--init-list", solve_args.init_list, "comma-separated initial locations for --init list");
  solve->add_option("--seed", solve_args.seed, "seed for random-k");
  solve->add_option("--max-iters", solve_args.max_iters, "iteration cap");
  solve->add_option("--jobs", solve_args.jobs, "worker threads (default $MFL_JOBS or 1)");
  solve->add_option("--strategy", solve_args.strategy, "best | first");
  solve->add_flag("--no-timing", solve_args.no_timing, "write 0 in the trace millis column");

  ExactArgs exact_args;
  exact_args.jobs = jobs;
  auto* exact = app.add_subcommand("exact", "brute-force optimum");
  exact->add_option("--in", exact_args.in, "instance JSON");
  exact->add_option("--out", exact_args.out, "solution JSON");
  exact->add_option("--manifest", exact_args.manifest, "run manifest path");
  exact->add_option("--max-subsets", exact_args.max_subsets, "refuse when C(n,k) exceeds this");
  exact->add_option("--jobs", exact_args.jobs, "worker threads");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  auto add_gen_common = [&](CLI::App* sub) {
    sub->add_option("--out", gen_args.out, "instance JSON");
    sub->add_option("--manifest", gen_args.manifest, "run manifest path");
  };
  auto* gen_random_cmd = gen->add_subcommand("random", "random Euclidean or graph metric");
  add_gen_common(gen_random_cmd);
  gen_random_cmd->add_option("--n", gen_args.n, "locations");
  gen_random_cmd->add_option("--k", gen_args.k, "facilities");
  gen_random_cmd->add_option("--clients", gen_args.clients, "clients");
  gen_random_cmd->add_option("--topology", gen_args.topology, "euclidean | graph");
  gen_random_cmd->add_option("--coord-range", gen_args.coord_range, "Euclidean coordinate range");
  gen_random_cmd->add_option("--density", gen_args.density, "graph extra-edge probability");
  gen_random_cmd->add_option("--edge-max", gen_args.edge_max, "graph maximum edge cost");
  gen_random_cmd->add_option("--weights", gen_args.weights, "facility weight range LO:HI");
  gen_random_cmd->add_option("--demands", gen_args.demands, "client demand range LO:HI");
  gen_random_cmd->add_option("--seed", gen_args.seed, "seed");
  auto* gen_gap = gen->add_subcommand("locality-gap", "two-metric locality trap");
  add_gen_common(gen_gap);
  gen_gap->add_option("--p", gen_args.p, "p (p+1 facilities and clients)");
  gen_gap->add_option("--D", gen_args.D, "movement cost along trap edges");
  gen_gap->add_option("--M", gen_args.M, "finite stand-in for unreachable");
  auto* gen_kmedian = gen->add_subcommand("kmedian", "k-median reduction of an instance's metric and clients");
  add_gen_common(gen_kmedian);
  gen_kmedian->add_option("--in", gen_args.in, "instance JSON supplying metric and clients")->required();
  gen_kmedian->add_option("--k", gen_args.k, "k");
  gen_kmedian->add_option("--D", gen_args.multiplier, "demand multiplier");

  VerifyArgs verify_args;
  verify_args.jobs = jobs;
  auto* verify = app.add_subcommand("verify", "check proof inequalities on a (local, reference) pair");
  verify->add_option("--in", verify_args.in, "instance JSON")->required();
  verify->add_option("--local", verify_args.local, "local solution JSON")->required();
  verify->add_option("--reference", verify_args.reference, "reference solution JSON (default: exact optimum)");
  verify->add_flag("--reference-optimal", verify_args.reference_optimal, "the reference is a global optimum");
  verify->add_option("--t", verify_args.t, "class parameter t (>= 2)");
  verify->add_option("--rho", verify_args.rho, "certify the local solution for this swap size (0: skip)");
  verify->add_option("--jobs", verify_args.jobs, "worker threads");
  verify->add_option("--max-subsets", verify_args.max_subsets, "cap for the exact reference");
  verify->add_option("--out", verify_args.out, "report JSON");
  verify->add_option("--manifest", verify_args.manifest, "run manifest path");

  BenchArgs bench_args;
  bench_args.jobs = jobs;
  auto* bench = app.add_subcommand("bench", "local search against the exact optimum");
  bench->add_option("--in", bench_args.inputs, "instance files (default: random instances)");
  bench->add_option("--count", bench_args.count, "random instances");
  bench->add_option("--n", bench_args.n, "locations");
  bench->add_option("--k", bench_args.k, "facilities");
  bench->add_option("--clients", bench_args.clients, "clients");
  bench->add_option("--topology", bench_args.topology, "euclidean | graph");
  bench->add_option("--weights", bench_args.weights, "facility weight range LO:HI");
  bench->add_option("--demands", bench_args.demands, "client demand range LO:HI");
  bench->add_option("--rho", bench_args.rhos, "comma-separated swap sizes");
  bench->add_option("--seed", bench_args.seed, "first seed");
  bench->add_option("--jobs", bench_args.jobs, "worker threads");
  bench->add_option("--max-subsets", bench_args.max_subsets, "cap for the exact optimum");
  bench->add_option("--out", bench_args.out, "CSV");
  bench->add_option("--manifest", bench_args.manifest, "run manifest path");

  std::vector<std::string> storage;
  storage.push_back("mfl");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Manifest manifest(command, args);
  std::string manifest_path;
  int code = kFailure;
  try {
    if (solve->parsed()) {
      manifest_path = solve_args.manifest;
      code = cmd_solve(solve_args, manifest);
    } else if (exact->parsed()) {
      manifest_path = exact_args.manifest;
      code = cmd_exact(exact_args, manifest);
    } else if (gen->parsed()) {
      manifest_path = gen_args.manifest;
      code = cmd_gen(gen->get_subcommands().front()->get_name(), gen_args, manifest);
    } else if (verify->parsed()) {
      manifest_path = verify_args.manifest;
      code = cmd_verify(verify_args, manifest);
    } else if (bench->parsed()) {
      manifest_path = bench_args.manifest;
      code = cmd_bench(bench_args, manifest);
    }
  } catch (const SubsetLimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kSubsetLimit;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kFailure;
  }
  try {
    manifest.write(manifest_path, code);
  } catch (const std::exception& e) {
    std::cerr << "warning: manifest not written: " << e.what() << "\n";
  }
  return code;
}

int main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace mfl::cli
