#include "mfl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>


namespace mfl {

namespace {

Cost uniform(std::mt19937_64& rng, std::pair<Cost, Cost> range) {
  return std::uniform_int_distribution<Cost>(range.first, range.second)(rng);
}

/// Smallest r with r*r >= x.
Cost ceil_sqrt(Cost x) {
  auto r = static_cast<Cost>(std::sqrt(static_cast<long double>(x)));
  while (r > 0 && (r - 1) * (r - 1) >= x) --r;
  while (r * r < x) ++r;
  return r;
}

std::vector<Location> sample_locations(std::mt19937_64& rng, int n, int count) {
  std::vector<Location> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  std::vector<Location> out;
  std::sample(all.begin(), all.end(), std::back_inserter(out), count, rng);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

}  // namespace

Instance gen_random(const RandomSpec& spec) {
  if (spec.n < 1) throw InvalidInput("n must be >= 1");
  if (spec.k < 1 || spec.k > spec.n) throw InvalidInput("k must be in [1, n]");
  if (spec.clients < 0 || spec.clients > spec.n) throw InvalidInput("client count must be in [0, n]");
  if (spec.weight_range.first < 0 || spec.weight_range.first > spec.weight_range.second) {
    throw InvalidInput("weight range must be non-empty and non-negative");
  }
  if (spec.demand_range.first < 0 || spec.demand_range.first > spec.demand_range.second) {
    throw InvalidInput("demand range must be non-empty and non-negative");
  }

  std::mt19937_64 rng(spec.seed);
  Metric metric;
  if (spec.topology == Topology::Euclidean) {
    if (spec.coord_range < 0 || spec.coord_range > 1'000'000) throw InvalidInput("coordinate range must be in [0, 1e6]");
    std::vector<std::pair<Cost, Cost>> pts;
    for (int v = 0; v < spec.n; ++v) pts.emplace_back(uniform(rng, {0, spec.coord_range}), uniform(rng, {0, spec.coord_range}));
    std::vector<Cost> entries;
    entries.reserve(static_cast<std::size_t>(spec.n) * spec.n);
    for (const auto& a : pts) {
      for (const auto& b : pts) {
        const Cost dx = a.first - b.first;
        const Cost dy = a.second - b.second;
        entries.push_back(ceil_sqrt(dx * dx + dy * dy));
      }
    }
    metric = Metric(spec.n, std::move(entries));
  } else {
    if (spec.edge_cost_max < 1) throw InvalidInput("edge cost maximum must be >= 1");
    if (spec.edge_density < 0.0 || spec.edge_density > 1.0) throw InvalidInput("edge density must be in [0, 1]");
    std::vector<Edge> edges;
    std::vector<Location> order(static_cast<std::size_t>(spec.n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int v = 1; v < spec.n; ++v) {
      const auto parent = std::uniform_int_distribution<int>(0, v - 1)(rng);
      edges.push_back({order[v], order[parent], uniform(rng, {1, spec.edge_cost_max})});
    }
    std::bernoulli_distribution extra(spec.edge_density);
    for (Location u = 0; u < spec.n; ++u) {
      for (Location v = u + 1; v < spec.n; ++v) {
        if (extra(rng)) edges.push_back({u, v, uniform(rng, {1, spec.edge_cost_max})});
      }
    }
    metric = metric_closure(spec.n, edges);
  }

  std::vector<Facility> facilities;
  for (Location loc : sample_locations(rng, spec.n, spec.k)) facilities.push_back({loc, uniform(rng, spec.weight_range)});
  std::vector<Client> clients;
  for (Location loc : sample_locations(rng, spec.n, spec.clients)) clients.push_back({loc, uniform(rng, spec.demand_range)});
  return make_instance(std::move(metric), std::move(facilities), std::move(clients));
}

Instance gen_kmedian_reduction(const KMedianInstance& kmedian, Cost multiplier) {
  if (multiplier < 1) throw InvalidInput("demand multiplier must be >= 1");
  if (kmedian.k < 0 || kmedian.k > kmedian.metric.size()) throw InvalidInput("k must be in [0, n]");
  std::vector<Facility> facilities;
  for (Location v = 0; v < kmedian.k; ++v) facilities.push_back({v, 1});
  std::vector<Client> clients;
  for (const auto& c : kmedian.clients) {
    const Cost demand = sat_mul(c.demand, multiplier);
    if (demand == kInf) throw InvalidInput("scaled demand overflows");
    clients.push_back({c.loc, demand});
  }
  return make_instance(kmedian.metric, std::move(facilities), std::move(clients));
}

Cost kmedian_optimum(const KMedianInstance& kmedian) {
  const int n = kmedian.metric.size();
  const int k = kmedian.k;
  if (k < 1 || k > n) throw InvalidInput("k must be in [1, n]");
  std::vector<Location> combo(static_cast<std::size_t>(k));
  std::iota(combo.begin(), combo.end(), 0);
  Cost best = kInf;
  for (;;) {
    Cost total = 0;
    for (const auto& c : kmedian.clients) {
      Cost d = kInf;
      for (Location s : combo) d = std::min(d, kmedian.metric(c.loc, s));
      total = sat_add(total, sat_mul(c.demand, d));
    }
    best = std::min(best, total);
    int t = k - 1;
    while (t >= 0 && combo[t] == n - k + t) --t;
    if (t < 0) break;
    ++combo[t];
    for (int u = t + 1; u < k; ++u) combo[u] = combo[u - 1] + 1;
  }
  return best;
}

Instance gen_locality_gap(int p, Cost D, Cost big) {
  if (p < 1) throw InvalidInput("p must be >= 1");
  if (D < 2) throw InvalidInput("D must be >= 2");
  const __int128 margin = static_cast<__int128>(p + 1) * D * 1000;
  if (static_cast<__int128>(big) <= margin) {
    throw InvalidInput("surrogate distance M must exceed (p+1) * D * 1000");
  }
  const int n = 2 * (p + 1);
  auto facility = [](int q) { return static_cast<Location>(q); };
  auto client = [p](int q) { return static_cast<Location>(p + 1 + q); };

  std::vector<Edge> assign_edges;
  std::vector<Edge> move_edges;
  for (Location u = 0; u < n; ++u) {
    for (Location v = u + 1; v < n; ++v) {
      assign_edges.push_back({u, v, big});
      move_edges.push_back({u, v, big});
    }
  }
  for (int q = 0; q <= p; ++q) {
    assign_edges.push_back({client(q), facility(q), 1});
    move_edges.push_back({facility(q), client((q + 1) % (p + 1)), D});
  }

  Instance inst;
  inst.assign = metric_closure(n, assign_edges);
  inst.move = metric_closure(n, move_edges);
  for (int q = 0; q <= p; ++q) {
    inst.facilities.push_back({facility(q), 1});
    inst.clients.push_back({client(q), 1});
  }
  inst.validate();
  return inst;
}

std::vector<Location> locality_gap_trap(int p) {
  std::vector<Location> out;
  for (int q = 0; q <= p; ++q) out.push_back(p + 1 + q);
  return out;
}

std::vector<Location> locality_gap_optimum(int p) {
  std::vector<Location> out;
  for (int q = 0; q <= p; ++q) out.push_back(q);
  return out;
}

}  // namespace mfl
