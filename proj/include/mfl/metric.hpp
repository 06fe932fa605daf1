#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "mfl/cost.hpp"

namespace mfl {

/// Dense n x n cost matrix between locations.
class Metric {
 public:
  Metric() = default;
  /// All off-diagonal entries kInf, diagonal 0.
  explicit Metric(int n);
  /// Row-major n*n entries; no validation.
  Metric(int n, std::vector<Cost> entries);

  int size() const { return n_; }
  Cost operator()(Location u, Location v) const { return dist_[index(u, v)]; }
  Cost& at(Location u, Location v) { return dist_[index(u, v)]; }
  const std::vector<Cost>& entries() const { return dist_; }

  friend bool operator==(const Metric&, const Metric&) = default;

 private:
  std::size_t index(Location u, Location v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<Cost> dist_;
};

struct Edge {
  Location u;
  Location v;
  Cost cost;
};

/// All-pairs shortest-path closure of an undirected edge list. Parallel edges
/// keep the cheapest; unconnected pairs stay kInf. Throws InvalidInput on a
/// negative cost or an out-of-range endpoint.
Metric metric_closure(int n, const std::vector<Edge>& edges);

/// Closure of an existing matrix (entries treated as symmetric edges).
Metric metric_closure(const Metric& m);

struct MetricViolation {
  enum class Kind { Negative, Diagonal, Symmetry, Triangle };
  Kind kind;
  Location u;
  Location v;
  Location w;  // only meaningful for Triangle
  std::string message;
};

/// Reports every broken metric invariant. Symmetry is reported once per
/// unordered pair, triangle violations as d(u,w) > d(u,v) + d(v,w) for u < w.
std::vector<MetricViolation> validate_metric(const Metric& m);

}  // namespace mfl
