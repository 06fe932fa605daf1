#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mfl/instance.hpp"

namespace mfl {

enum class Topology { Euclidean, Graph };

struct RandomSpec {
  int n = 10;
  int k = 3;
  int clients = 10;
  Topology topology = Topology::Euclidean;
  Cost coord_range = 100;     // Euclidean: integer coordinates in [0, coord_range]
  double edge_density = 0.3;  // Graph: extra-edge probability on top of a spanning tree
  Cost edge_cost_max = 100;   // Graph: edge costs in [1, edge_cost_max]
  std::pair<Cost, Cost> weight_range{1, 1};
  std::pair<Cost, Cost> demand_range{1, 1};
  std::uint64_t seed = 0;
};

/// Random metric instance. Euclidean distances are ceil(sqrt(dx^2 + dy^2)),
/// which keeps the triangle inequality on integers. Facilities and clients
/// are sampled without replacement. Throws InvalidInput on infeasible
/// parameters.
Instance gen_random(const RandomSpec& spec);

struct KMedianInstance {
  Metric metric;
  std::vector<Client> clients;
  int k = 1;
};

/// MFL instance from a k-median instance: facilities at locations 0..k-1
/// with unit weight, demands multiplied by `multiplier`, one shared metric.
Instance gen_kmedian_reduction(const KMedianInstance& kmedian, Cost multiplier);

/// Brute-force k-median optimum (sum of demand * nearest distance).
Cost kmedian_optimum(const KMedianInstance& kmedian);

/// Two-metric trap: facilities i_0..i_p at locations 0..p, clients j_0..j_p at
/// p+1..2p+1. Assignment: c(j_q, i_q) = 1. Movement: c(i_q, j_{q+1 mod p+1}) = D.
/// Every other distinct pair costs `big` before closure. Requires p >= 1,
/// D >= 2 and big > (p+1) * D * 1000.
Instance gen_locality_gap(int p, Cost D, Cost big);

/// Locations of the trap's local optimum {j_0..j_p} and optimum {i_0..i_p}.
std::vector<Location> locality_gap_trap(int p);
std::vector<Location> locality_gap_optimum(int p);

}  // namespace mfl
