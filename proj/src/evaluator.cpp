#include "mfl/evaluator.hpp"

#include <algorithm>
#include <string>

#include "mfl/matching.hpp"

namespace mfl {

namespace {

bool closer(Cost da, Location a, Cost db, Location b) { return da < db || (da == db && a < b); }

bool contains(std::span<const Location> set, Location v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

/// Offers location s at distance d to the (nearest, second) pair.
void offer(NearestIndex::Entry& e, Location s, Cost d) {
  if (s == e.nearest || s == e.second) return;
  if (e.nearest == kNoLocation || closer(d, s, e.nearest_dist, e.nearest)) {
    e.second = e.nearest;
    e.second_dist = e.nearest == kNoLocation ? kInf : e.nearest_dist;
    e.nearest = s;
    e.nearest_dist = d;
  } else if (e.second == kNoLocation || closer(d, s, e.second_dist, e.second)) {
    e.second = s;
    e.second_dist = d;
  }
}

NearestIndex::Entry scan(const Instance& instance, std::span<const Location> open, Location v) {
  NearestIndex::Entry e;
  for (Location s : open) offer(e, s, instance.assign(v, s));
  return e;
}

void check_move_shape(const Instance& instance, std::span<const Location> open, std::span<const Location> out,
                      std::span<const Location> in) {
  if (out.size() != in.size()) throw InvalidInput("swap must close and open equally many locations");
  auto has_duplicates = [](std::span<const Location> xs) {
    std::vector<Location> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    return std::adjacent_find(v.begin(), v.end()) != v.end();
  };
  if (has_duplicates(out) || has_duplicates(in)) throw InvalidInput("swap sets must not repeat locations");
  for (Location x : out) {
    if (!contains(open, x)) throw InvalidInput("swapped-out location " + std::to_string(x) + " is not open");
  }
  for (Location y : in) {
    if (y < 0 || y >= instance.n()) throw InvalidInput("swapped-in location " + std::to_string(y) + " out of range");
    if (contains(open, y)) throw InvalidInput("swapped-in location " + std::to_string(y) + " is already open");
  }
}

}  // namespace

NearestIndex build_index(const Instance& instance, std::span<const Location> open) {
  if (open.empty()) throw InvalidInput("cannot index an empty destination set");
  NearestIndex index;
  index.entries.reserve(instance.clients.size());
  for (const auto& client : instance.clients) index.entries.push_back(scan(instance, open, client.loc));
  return index;
}

NearestIndex update_index(const Instance& instance, const NearestIndex& index, std::span<const Location> new_open,
                          std::span<const Location> out, std::span<const Location> in) {
  NearestIndex next;
  next.entries.reserve(index.entries.size());
  for (std::size_t j = 0; j < index.entries.size(); ++j) {
    const auto& old = index.entries[j];
    const Location v = instance.clients[j].loc;
    if (contains(out, old.nearest) || (old.second != kNoLocation && contains(out, old.second))) {
      next.entries.push_back(scan(instance, new_open, v));
      continue;
    }
    NearestIndex::Entry e = old;
    for (Location y : in) offer(e, y, instance.assign(v, y));
    next.entries.push_back(e);
  }
  return next;
}

std::vector<Location> apply_swap(std::span<const Location> open, std::span<const Location> out,
                                 std::span<const Location> in) {
  std::vector<Location> next;
  next.reserve(open.size());
  for (Location s : open) {
    if (!contains(out, s)) next.push_back(s);
  }
  next.insert(next.end(), in.begin(), in.end());
  std::sort(next.begin(), next.end());
  return next;
}

Cost swapped_assignment_cost(const Instance& instance, std::span<const Location> open, const NearestIndex& index,
                             std::span<const Location> out, std::span<const Location> in) {
  Cost total = 0;
  std::vector<Location> remaining;
  for (std::size_t j = 0; j < index.entries.size(); ++j) {
    const auto& e = index.entries[j];
    const auto& client = instance.clients[j];
    Cost best = kInf;
    if (!contains(out, e.nearest)) {
      best = e.nearest_dist;
    } else if (e.second == kNoLocation || !contains(out, e.second)) {
      best = e.second_dist;
    } else {
      if (remaining.empty()) {
        for (Location s : open) {
          if (!contains(out, s)) remaining.push_back(s);
        }
      }
      for (Location s : remaining) best = std::min(best, instance.assign(client.loc, s));
    }
    for (Location y : in) best = std::min(best, instance.assign(client.loc, y));
    total = sat_add(total, sat_mul(client.demand, best));
  }
  return total;
}

SwapMove evaluate_swap(const Instance& instance, const Solution& current, const NearestIndex& index,
                       std::span<const Location> out, std::span<const Location> in) {
  const auto& open = current.destinations;
  check_move_shape(instance, open, out, in);
  SwapMove move;
  move.out.assign(out.begin(), out.end());
  move.in.assign(in.begin(), in.end());
  std::sort(move.out.begin(), move.out.end());
  std::sort(move.in.begin(), move.in.end());
  if (out.empty()) return move;

  const auto next = apply_swap(open, out, in);
  const Cost total = sat_add(movement_cost_value(instance, next),
                             swapped_assignment_cost(instance, open, index, out, in));
  if (total == kInf) {
    move.delta = kInf;
  } else if (current.total == kInf) {
    move.delta = -kInf;
  } else {
    move.delta = total - current.total;
  }
  return move;
}

}  // namespace mfl
