#include "mfl/instance.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace mfl {

bool Instance::unit_weights() const {
  return std::all_of(facilities.begin(), facilities.end(), [](const Facility& f) { return f.weight == 1; });
}

void Instance::validate() const {
  const int n = assign.size();
  if (move.size() != n) throw InvalidInput("assignment and movement metrics differ in size");
  if (k() > n) {
    std::ostringstream msg;
    msg << "k = " << k() << " exceeds n = " << n;
    throw InvalidInput(msg.str());
  }
  for (std::size_t i = 0; i < facilities.size(); ++i) {
    const auto& f = facilities[i];
    if (f.loc < 0 || f.loc >= n) throw InvalidInput("facility " + std::to_string(i) + " location out of range");
    if (f.weight < 0) throw InvalidInput("facility " + std::to_string(i) + " has negative weight");
  }
  for (std::size_t j = 0; j < clients.size(); ++j) {
    const auto& c = clients[j];
    if (c.loc < 0 || c.loc >= n) throw InvalidInput("client " + std::to_string(j) + " location out of range");
    if (c.demand < 0) throw InvalidInput("client " + std::to_string(j) + " has negative demand");
  }
  if (scale < 1) throw InvalidInput("scale must be >= 1");
}

Instance make_instance(Metric metric, std::vector<Facility> facilities, std::vector<Client> clients) {
  Instance inst;
  inst.move = metric;
  inst.assign = std::move(metric);
  inst.facilities = std::move(facilities);
  inst.clients = std::move(clients);
  inst.validate();
  return inst;
}

std::vector<Location> Solution::destination_set() const {
  std::vector<Location> s = destinations;
  std::sort(s.begin(), s.end());
  return s;
}

std::vector<Location> canonicalize_destinations(const Instance& instance,
                                                std::span<const Location> destinations) {
  const int n = instance.n();
  if (static_cast<int>(destinations.size()) != instance.k()) {
    throw InvalidInput("destination vector has length " + std::to_string(destinations.size()) +
                       ", expected k = " + std::to_string(instance.k()));
  }
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (Location d : destinations) {
    if (d < 0 || d >= n) throw InvalidInput("destination " + std::to_string(d) + " out of range");
    used[d] = 1;
  }
  std::vector<char> kept(static_cast<std::size_t>(n), 0);
  std::vector<Location> out(destinations.begin(), destinations.end());
  Location lowest_free = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!kept[out[i]]) {
      kept[out[i]] = 1;
      continue;
    }
    const Location home = instance.facilities[i].loc;
    Location replacement = home;
    if (used[home]) {
      while (lowest_free < n && used[lowest_free]) ++lowest_free;
      replacement = lowest_free;
    }
    out[i] = replacement;
    used[replacement] = 1;
    kept[replacement] = 1;
  }
  return out;
}

Location nearest_location(const Instance& instance, std::span<const Location> open, Location v) {
  Location best = kNoLocation;
  Cost best_d = kInf;
  for (Location s : open) {
    const Cost d = instance.assign(v, s);
    if (best == kNoLocation || d < best_d || (d == best_d && s < best)) {
      best = s;
      best_d = d;
    }
  }
  return best;
}

Cost assignment_cost(const Instance& instance, std::span<const Location> open) {
  Cost total = 0;
  for (const auto& client : instance.clients) {
    if (open.empty()) {
      total = sat_add(total, sat_mul(client.demand, kInf));
      continue;
    }
    const Location s = nearest_location(instance, open, client.loc);
    total = sat_add(total, sat_mul(client.demand, instance.assign(client.loc, s)));
  }
  return total;
}

Solution evaluate(const Instance& instance, std::span<const Location> destinations) {
  Solution sol;
  sol.destinations = canonicalize_destinations(instance, destinations);
  for (int i = 0; i < instance.k(); ++i) {
    const auto& f = instance.facilities[i];
    sol.matching_cost = sat_add(sol.matching_cost, sat_mul(f.weight, instance.move(f.loc, sol.destinations[i])));
  }
  sol.sigma.reserve(instance.clients.size());
  if (!sol.destinations.empty()) {
    for (const auto& client : instance.clients) {
      const Location s = nearest_location(instance, sol.destinations, client.loc);
      sol.sigma.push_back(s);
      sol.assignment_cost = sat_add(sol.assignment_cost, sat_mul(client.demand, instance.assign(client.loc, s)));
    }
  } else if (!instance.clients.empty()) {
    sol.sigma.assign(instance.clients.size(), kNoLocation);
    for (const auto& client : instance.clients) {
      sol.assignment_cost = sat_add(sol.assignment_cost, sat_mul(client.demand, kInf));
    }
  }
  sol.total = sat_add(sol.matching_cost, sol.assignment_cost);
  return sol;
}

}  // namespace mfl
