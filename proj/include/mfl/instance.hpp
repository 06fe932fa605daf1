#pragma once

#include <span>
#include <vector>

#include "mfl/cost.hpp"
#include "mfl/metric.hpp"

namespace mfl {

struct Facility {
  Location loc = 0;
  Cost weight = 1;
  friend bool operator==(const Facility&, const Facility&) = default;
};

struct Client {
  Location loc = 0;
  Cost demand = 1;
  friend bool operator==(const Client&, const Client&) = default;
};

/// A mobile facility location instance. Assignment distances come from
/// `assign`; movement distances from `move`, which equals `assign` unless the
/// instance was built with two unrelated metrics.
struct Instance {
  Metric assign;
  Metric move;
  std::vector<Facility> facilities;
  std::vector<Client> clients;
  Cost scale = 1;

  int n() const { return assign.size(); }
  int k() const { return static_cast<int>(facilities.size()); }
  bool single_metric() const { return assign == move; }
  bool unit_weights() const;

  /// Throws InvalidInput when locations are out of range, k > n, a weight or
  /// demand is negative, or the two metrics disagree in size.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Builds an instance where the movement metric aliases the assignment one.
Instance make_instance(Metric metric, std::vector<Facility> facilities,
                       std::vector<Client> clients);

struct Solution {
  std::vector<Location> destinations;  // destinations[i] = final location of facility i
  Cost matching_cost = 0;              // F
  Cost assignment_cost = 0;            // C
  Cost total = 0;                      // F + C, saturating
  std::vector<Location> sigma;         // nearest open location per client

  /// Sorted destination set.
  std::vector<Location> destination_set() const;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// Replaces repeated destinations so that all k are distinct: a duplicate
/// moves back to its facility's initial location when that location is
/// unused, otherwise to the lowest-index unused location. The first facility
/// holding a location keeps it.
std::vector<Location> canonicalize_destinations(const Instance& instance,
                                                std::span<const Location> destinations);

/// Nearest location of `open` to `v` under the assignment metric; ties go to
/// the lowest location index. `open` must be non-empty.
Location nearest_location(const Instance& instance, std::span<const Location> open, Location v);

/// Evaluates the given destination vector as-is (after canonicalization):
/// F uses these destinations without re-matching, C uses nearest assignment.
Solution evaluate(const Instance& instance, std::span<const Location> destinations);

/// C of a destination set (demand-weighted nearest distances).
Cost assignment_cost(const Instance& instance, std::span<const Location> open);

}  // namespace mfl
