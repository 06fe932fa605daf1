#include "mfl/matching.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace mfl {

namespace {

/// Square matrix with kInf entries replaced by a finite penalty larger than
/// any perfect matching that avoids them.
struct EncodedMatrix {
  int k = 0;
  std::vector<Cost> a;  // row-major
  Cost penalty = 0;

  Cost operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * k + c]; }
};

EncodedMatrix encode(const std::vector<std::vector<Cost>>& costs) {
  EncodedMatrix m;
  m.k = static_cast<int>(costs.size());
  Cost max_finite = 0;
  for (const auto& row : costs) {
    if (static_cast<int>(row.size()) != m.k) {
      throw InvalidInput("cost matrix must be square (" + std::to_string(m.k) + " rows, a row of " +
                         std::to_string(row.size()) + ")");
    }
    for (Cost c : row) {
      if (c < 0) throw InvalidInput("cost matrix entries must be non-negative");
      if (c != kInf) max_finite = std::max(max_finite, c);
    }
  }
  const Cost kk = static_cast<Cost>(m.k) * m.k + 1;
  if (max_finite > (Cost{1} << 60) / kk) throw InvalidInput("cost matrix entries too large for exact matching");
  m.penalty = max_finite * std::max(m.k, 1) + 1;
  m.a.reserve(static_cast<std::size_t>(m.k) * m.k);
  for (const auto& row : costs) {
    for (Cost c : row) m.a.push_back(c == kInf ? m.penalty : c);
  }
  return m;
}

/// Hungarian method with potentials on rows `rows` and columns `cols` of m.
/// Returns the optimal encoded cost; fills `match` (row position -> column
/// position) when non-null.
Cost hungarian(const EncodedMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols,
               std::vector<int>* match) {
  const int k = static_cast<int>(rows.size());
  if (k == 0) {
    if (match) match->clear();
    return 0;
  }
  constexpr Cost kBig = Cost{1} << 62;
  std::vector<Cost> u(k + 1, 0), v(k + 1, 0), minv(k + 1);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  std::vector<char> used(k + 1);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kBig);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      Cost delta = kBig;
      int j1 = 0;
      for (int j = 1; j <= k; ++j) {
        if (used[j]) continue;
        const Cost cur = m(rows[i0 - 1], cols[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Cost total = 0;
  std::vector<int> row_to_col(k);
  for (int j = 1; j <= k; ++j) row_to_col[p[j] - 1] = j - 1;
  for (int r = 0; r < k; ++r) total += m(rows[r], cols[row_to_col[r]]);
  if (match) *match = std::move(row_to_col);
  return total;
}

std::vector<int> iota_vec(int k) {
  std::vector<int> v(k);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

/// Fixes rows in order, each to the smallest column that keeps the optimum.
std::vector<int> lex_smallest_optimal(const EncodedMatrix& m, Cost optimum) {
  std::vector<int> assignment(m.k, -1);
  std::vector<int> free_cols = iota_vec(m.k);
  Cost fixed = 0;
  for (int r = 0; r < m.k; ++r) {
    std::vector<int> rest_rows;
    for (int rr = r + 1; rr < m.k; ++rr) rest_rows.push_back(rr);
    for (std::size_t ci = 0; ci < free_cols.size(); ++ci) {
      const int c = free_cols[ci];
      std::vector<int> rest_cols;
      for (int cc : free_cols) {
        if (cc != c) rest_cols.push_back(cc);
      }
      const Cost with = fixed + m(r, c) + hungarian(m, rest_rows, rest_cols, nullptr);
      if (with == optimum) {
        assignment[r] = c;
        fixed += m(r, c);
        free_cols.erase(free_cols.begin() + static_cast<std::ptrdiff_t>(ci));
        break;
      }
    }
  }
  return assignment;
}

Cost decode(const EncodedMatrix& m, const std::vector<int>& assignment) {
  Cost total = 0;
  for (int r = 0; r < m.k; ++r) {
    if (m(r, assignment[r]) == m.penalty) return kInf;
    total += m(r, assignment[r]);
  }
  return total;
}

std::vector<std::vector<Cost>> movement_matrix(const Instance& instance, std::span<const Location> targets) {
  if (static_cast<int>(targets.size()) != instance.k()) {
    throw InvalidInput("destination set has " + std::to_string(targets.size()) + " locations, expected k = " +
                       std::to_string(instance.k()));
  }
  for (Location t : targets) {
    if (t < 0 || t >= instance.n()) throw InvalidInput("destination " + std::to_string(t) + " out of range");
  }
  std::vector<std::vector<Cost>> costs(targets.size(), std::vector<Cost>(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const auto& f = instance.facilities[i];
    for (std::size_t t = 0; t < targets.size(); ++t) {
      costs[i][t] = sat_mul(f.weight, instance.move(f.loc, targets[t]));
    }
  }
  return costs;
}

}  // namespace

MatchingResult min_cost_perfect_matching(const std::vector<std::vector<Cost>>& costs) {
  const EncodedMatrix m = encode(costs);
  const auto all = iota_vec(m.k);
  MatchingResult result;
  const Cost optimum = hungarian(m, all, all, &result.assignment);
  if (m.k <= kLexMatchingLimit) result.assignment = lex_smallest_optimal(m, optimum);
  result.cost = decode(m, result.assignment);
  return result;
}

Cost min_cost_perfect_matching_cost(const std::vector<std::vector<Cost>>& costs) {
  const EncodedMatrix m = encode(costs);
  const auto all = iota_vec(m.k);
  std::vector<int> assignment;
  hungarian(m, all, all, &assignment);
  return decode(m, assignment);
}

Movement movement_cost(const Instance& instance, std::span<const Location> targets) {
  const auto result = min_cost_perfect_matching(movement_matrix(instance, targets));
  Movement out;
  out.cost = result.cost;
  out.destinations.reserve(targets.size());
  for (int slot : result.assignment) out.destinations.push_back(targets[slot]);
  return out;
}

Cost movement_cost_value(const Instance& instance, std::span<const Location> targets) {
  return min_cost_perfect_matching_cost(movement_matrix(instance, targets));
}

Solution solution_from_set(const Instance& instance, std::span<const Location> targets) {
  std::vector<Location> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput("destination set has repeated locations");
  }
  const Movement movement = movement_cost(instance, sorted);
  return evaluate(instance, movement.destinations);
}

}  // namespace mfl
