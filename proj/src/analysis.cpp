#include "mfl/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "mfl/evaluator.hpp"
#include "mfl/local_search.hpp"
#include "mfl/matching.hpp"

namespace mfl::analysis {

namespace {

Cost clamp_cost(__int128 v) {
  constexpr __int128 hi = std::numeric_limits<Cost>::max();
  constexpr __int128 lo = std::numeric_limits<Cost>::min();
  return static_cast<Cost>(std::clamp(v, lo, hi));
}

std::string facility_subject(const PairedSolutions& p, FacilityId i) {
  std::ostringstream s;
  s << "s=" << p.s[i] << " (facility " << i << ")";
  return s.str();
}

std::vector<Location> distinct_checked(const Instance& instance, const Solution& sol, const char* which) {
  if (static_cast<int>(sol.destinations.size()) != instance.k()) {
    throw InvalidInput(std::string(which) + " solution has " + std::to_string(sol.destinations.size()) +
                       " destinations, instance has k = " + std::to_string(instance.k()));
  }
  std::vector<Location> sorted = sol.destinations;
  std::sort(sorted.begin(), sorted.end());
  if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= instance.n())) {
    throw InvalidInput(std::string(which) + " solution has a destination out of range");
  }
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InvalidInput(std::string(which) + " solution repeats a destination");
  }
  return sorted;
}

std::vector<std::vector<FacilityId>> captured_by(const PairedSolutions& p) {
  std::vector<std::vector<FacilityId>> capt(static_cast<std::size_t>(p.k()));
  for (FacilityId i = 0; i < p.k(); ++i) capt[p.succ[i]].push_back(i);
  for (auto& c : capt) {
    std::sort(c.begin(), c.end(), [&](FacilityId a, FacilityId b) { return p.o[a] < p.o[b]; });
  }
  return capt;
}

/// Facilities of the s ~> o subpath, or empty if there is none.
std::vector<FacilityId> subpath(const PairedSolutions& p, const Decomposition& d, Location s, Location o) {
  if (s < 0 || s >= static_cast<Location>(p.s_owner.size()) || o < 0 ||
      o >= static_cast<Location>(p.o_owner.size())) {
    return {};
  }
  const FacilityId a = p.s_owner[s];
  const FacilityId b = p.o_owner[o];
  if (a < 0 || b < 0) return {};
  const auto& pa = d.place[a];
  const auto& pb = d.place[b];
  if (pa.in_cycle != pb.in_cycle || pa.element != pb.element) return {};
  const auto& element = pa.in_cycle ? d.cycles[pa.element] : d.paths[pa.element];
  std::vector<FacilityId> z;
  if (!pa.in_cycle) {
    if (pa.position > pb.position) return {};
    z.assign(element.begin() + pa.position, element.begin() + pb.position + 1);
    return z;
  }
  const int len = static_cast<int>(element.size());
  for (int step = 0; step < len; ++step) {
    const FacilityId i = element[(pa.position + step) % len];
    z.push_back(i);
    if (i == b) break;
  }
  return z;
}

bool all_unit_weights(const PairedSolutions& p) { return p.instance->unit_weights(); }

Cost weight(const PairedSolutions& p, FacilityId i) { return p.instance->facilities[i].weight; }

/// w_i * c(o_i, sigma(o_i)).
__int128 reroute_cost(const PairedSolutions& p, FacilityId i) {
  return static_cast<__int128>(weight(p, i)) * p.dist(p.o[i], p.nearest_s[p.o[i]]);
}

}  // namespace

// ---------------------------------------------------------------------------

Cost PairedSolutions::demand_of_o(FacilityId i) const {
  Cost total = 0;
  for (int j : served_by_o[i]) total = sat_add(total, instance->clients[j].demand);
  return total;
}

PairedSolutions pair(const Instance& instance, const Solution& local, const Solution& reference) {
  instance.validate();
  const auto s_sorted = distinct_checked(instance, local, "local");
  const auto o_sorted = distinct_checked(instance, reference, "reference");
  const int n = instance.n();
  const int k = instance.k();

  PairedSolutions p;
  p.instance = &instance;
  p.local = evaluate(instance, local.destinations);
  p.reference = evaluate(instance, reference.destinations);
  p.s = p.local.destinations;
  p.o = p.reference.destinations;

  p.nearest_s.resize(n);
  p.nearest_o.resize(n);
  for (Location v = 0; v < n; ++v) {
    p.nearest_s[v] = k > 0 ? nearest_location(instance, s_sorted, v) : kNoLocation;
    p.nearest_o[v] = k > 0 ? nearest_location(instance, o_sorted, v) : kNoLocation;
  }
  p.s_owner.assign(n, -1);
  p.o_owner.assign(n, -1);
  for (FacilityId i = 0; i < k; ++i) {
    p.s_owner[p.s[i]] = i;
    p.o_owner[p.o[i]] = i;
    const auto& f = instance.facilities[i];
    p.f.push_back(sat_mul(f.weight, instance.move(f.loc, p.s[i])));
    p.f_star.push_back(sat_mul(f.weight, instance.move(f.loc, p.o[i])));
  }
  p.served_by_s.assign(k, {});
  p.served_by_o.assign(k, {});
  for (std::size_t j = 0; j < instance.clients.size(); ++j) {
    const Location v = instance.clients[j].loc;
    p.sigma.push_back(p.nearest_s[v]);
    p.sigma_star.push_back(p.nearest_o[v]);
    p.c.push_back(instance.assign(v, p.nearest_s[v]));
    p.c_star.push_back(instance.assign(v, p.nearest_o[v]));
    p.served_by_s[p.s_owner[p.nearest_s[v]]].push_back(static_cast<int>(j));
    p.served_by_o[p.o_owner[p.nearest_o[v]]].push_back(static_cast<int>(j));
  }
  for (FacilityId i = 0; i < k; ++i) p.succ.push_back(p.s_owner[p.nearest_s[p.o[i]]]);
  return p;
}

// ---------------------------------------------------------------------------

std::vector<FacilityId> Decomposition::tails(FacilityId i) const {
  std::vector<FacilityId> out;
  for (int path : captured_paths[i]) out.push_back(path_start(path));
  return out;
}

std::vector<FacilityId> Decomposition::heads(FacilityId i) const {
  std::vector<FacilityId> out;
  for (int path : captured_paths[i]) out.push_back(path_end(path));
  return out;
}

Decomposition decompose(const PairedSolutions& p) {
  const int k = p.k();
  Decomposition d;
  d.place.assign(k, {});

  std::vector<FacilityId> by_s(k);
  std::iota(by_s.begin(), by_s.end(), 0);
  std::sort(by_s.begin(), by_s.end(), [&](FacilityId a, FacilityId b) { return p.s[a] < p.s[b]; });

  // Cycles of the successor map; every component of a functional graph has one.
  enum : char { kUnseen, kOnStack, kDone };
  std::vector<char> state(k, kUnseen);
  for (FacilityId start : by_s) {
    std::vector<FacilityId> stack;
    FacilityId cur = start;
    while (state[cur] == kUnseen) {
      state[cur] = kOnStack;
      stack.push_back(cur);
      cur = p.succ[cur];
    }
    if (state[cur] == kOnStack) {
      auto first = std::find(stack.begin(), stack.end(), cur);
      std::vector<FacilityId> cycle(first, stack.end());
      auto lowest = std::min_element(cycle.begin(), cycle.end(),
                                     [&](FacilityId a, FacilityId b) { return p.s[a] < p.s[b]; });
      std::rotate(cycle.begin(), lowest, cycle.end());
      d.cycles.push_back(std::move(cycle));
    }
    for (FacilityId v : stack) state[v] = kDone;
  }
  std::sort(d.cycles.begin(), d.cycles.end(),
            [&](const auto& a, const auto& b) { return p.s[a.front()] < p.s[b.front()]; });

  std::vector<char> removed(k, 0);
  for (std::size_t c = 0; c < d.cycles.size(); ++c) {
    for (std::size_t pos = 0; pos < d.cycles[c].size(); ++pos) {
      const FacilityId i = d.cycles[c][pos];
      removed[i] = 1;
      d.place[i] = {true, static_cast<int>(c), static_cast<int>(pos)};
    }
  }

  // Maximal paths from S nodes without incoming arcs, lowest location first.
  std::vector<int> indegree(k, 0);
  for (FacilityId i = 0; i < k; ++i) {
    if (!removed[i]) ++indegree[p.succ[i]];
  }
  for (FacilityId start : by_s) {
    if (removed[start] || indegree[start] != 0) continue;
    std::vector<FacilityId> path;
    for (FacilityId cur = start; !removed[cur]; cur = p.succ[cur]) {
      removed[cur] = 1;
      d.place[cur] = {false, static_cast<int>(d.paths.size()), static_cast<int>(path.size())};
      path.push_back(cur);
    }
    d.paths.push_back(std::move(path));
  }

  d.capt = captured_by(p);
  d.cent.assign(k, -1);
  for (const auto& cycle : d.cycles) {
    for (std::size_t pos = 0; pos < cycle.size(); ++pos) {
      d.cent[cycle[pos]] = cycle[(pos + cycle.size() - 1) % cycle.size()];
    }
  }
  for (const auto& path : d.paths) {
    for (std::size_t pos = 1; pos < path.size(); ++pos) d.cent[path[pos]] = path[pos - 1];
  }
  d.captured_paths.assign(k, {});
  for (std::size_t path = 0; path < d.paths.size(); ++path) {
    d.captured_paths[p.succ[d.paths[path].back()]].push_back(static_cast<int>(path));
  }
  return d;
}

// ---------------------------------------------------------------------------

std::string to_string(Variant variant) {
  return variant == Variant::PathDecomposition ? "path-decomposition" : "capture-based";
}

ClassPartition classify(const PairedSolutions& p, const Decomposition& d, int t, Variant variant) {
  if (t < 2) throw InvalidInput("class parameter t must be >= 2");
  const int k = p.k();
  ClassPartition part;
  part.t = t;
  part.variant = variant;
  part.cls.assign(k, SClass::S0);
  part.in_s3.assign(k, false);
  part.cent.assign(k, -1);

  for (FacilityId i = 0; i < k; ++i) {
    const auto& capt = d.capt[i];
    const auto m = static_cast<Cost>(capt.size());
    if (m == 0) {
      part.cls[i] = SClass::S0;
      part.in_s3[i] = true;
      continue;
    }
    bool small_demand = false;
    if (variant == Variant::PathDecomposition) {
      part.cent[i] = d.cent[i];
      const Cost demand = part.cent[i] >= 0 ? p.demand_of_o(part.cent[i]) : 0;
      small_demand = demand <= t;
    } else {
      FacilityId closest = capt.front();
      for (FacilityId c : capt) {
        const Cost dc = p.dist(p.s[i], p.o[c]);
        const Cost db = p.dist(p.s[i], p.o[closest]);
        if (dc < db || (dc == db && p.o[c] < p.o[closest])) closest = c;
      }
      part.cent[i] = closest;
      Cost demand = 0;
      for (FacilityId c : capt) demand = sat_add(demand, p.demand_of_o(c));
      const Cost w = std::max(weight(p, i), weight(p, closest));
      small_demand = static_cast<__int128>(demand) <= static_cast<__int128>(w) * t;
    }
    part.cls[i] = (small_demand || m > t) ? SClass::S1 : SClass::S2;
    part.in_s3[i] = part.cls[i] == SClass::S1 && m <= t;
  }

  for (FacilityId i = 0; i < k; ++i) {
    switch (part.cls[i]) {
      case SClass::S0: part.s0.push_back(p.s[i]); break;
      case SClass::S1: part.s1.push_back(p.s[i]); break;
      case SClass::S2: part.s2.push_back(p.s[i]); break;
    }
    if (part.in_s3[i]) part.s3.push_back(p.s[i]);
  }
  for (auto* set : {&part.s0, &part.s1, &part.s2, &part.s3}) std::sort(set->begin(), set->end());
  return part;
}

// ---------------------------------------------------------------------------

bool VerificationReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

void VerificationReport::add(std::string name, std::string subject, __int128 lhs, __int128 rhs) {
  CheckEntry e;
  e.name = std::move(name);
  e.subject = std::move(subject);
  e.lhs = clamp_cost(lhs);
  e.rhs = clamp_cost(rhs);
  e.slack = clamp_cost(rhs - lhs);
  e.pass = rhs >= lhs;
  checks.push_back(std::move(e));
}

void VerificationReport::append(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

std::size_t VerificationReport::count(const std::string& name) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [&](const CheckEntry& c) { return c.name == name; }));
}

// ---------------------------------------------------------------------------

VerificationReport check_reassignment_lemma(const PairedSolutions& p) {
  VerificationReport r;
  for (std::size_t j = 0; j < p.c.size(); ++j) {
    const Location v = p.instance->clients[j].loc;
    const Location detour = p.nearest_s[p.sigma_star[j]];
    const __int128 lhs = static_cast<__int128>(p.dist(v, detour)) - p.c[j];
    const __int128 rhs = static_cast<__int128>(2) * p.c_star[j];
    r.add("reassignment", "client " + std::to_string(j), lhs, rhs);
  }
  return r;
}

Cost shift_value(const PairedSolutions& p, const Decomposition& d, Location s, Location o) {
  const auto z = subpath(p, d, s, o);
  if (z.empty()) {
    throw InvalidInput("(" + std::to_string(s) + ", " + std::to_string(o) + ") does not bound a subpath");
  }
  __int128 shift = 0;
  for (FacilityId i : z) {
    shift += static_cast<__int128>(p.f_star[i]) - p.f[i];
    if (i != z.back()) shift += reroute_cost(p, i);
  }
  return clamp_cost(shift);
}

VerificationReport check_shift_bound(const PairedSolutions& p, const Decomposition& d, Location s, Location o) {
  const auto z = subpath(p, d, s, o);
  if (z.empty()) {
    throw InvalidInput("(" + std::to_string(s) + ", " + std::to_string(o) + ") does not bound a subpath");
  }
  VerificationReport r;
  const std::string subject = "s=" + std::to_string(s) + " o=" + std::to_string(o);
  __int128 star_sum = 0;
  for (FacilityId i : z) star_sum += p.f_star[i];
  const __int128 rhs = 2 * star_sum - reroute_cost(p, z.back());
  r.add("shift_bound", subject, shift_value(p, d, s, o), rhs);
  if (!all_unit_weights(p)) {
    for (FacilityId i : z) {
      r.add("shift_facility_bound", subject + " facility " + std::to_string(i), reroute_cost(p, i),
            static_cast<__int128>(p.f_star[i]) + p.f[i]);
    }
  }
  return r;
}

VerificationReport check_all_shift_bounds(const PairedSolutions& p, const Decomposition& d) {
  VerificationReport r;
  for (const auto& path : d.paths) {
    for (std::size_t a = 0; a < path.size(); ++a) {
      for (std::size_t b = a; b < path.size(); ++b) r.append(check_shift_bound(p, d, p.s[path[a]], p.o[path[b]]));
    }
  }
  for (const auto& cycle : d.cycles) {
    for (std::size_t a = 0; a < cycle.size(); ++a) {
      for (std::size_t len = 1; len <= cycle.size(); ++len) {
        r.append(check_shift_bound(p, d, p.s[cycle[a]], p.o[cycle[(a + len - 1) % cycle.size()]]));
      }
    }
  }
  return r;
}

VerificationReport check_cycle_lemma(const PairedSolutions& p, const Decomposition& d) {
  VerificationReport r;
  for (std::size_t c = 0; c < d.cycles.size(); ++c) {
    __int128 rhs = 0;
    for (FacilityId i : d.cycles[c]) rhs += -static_cast<__int128>(p.f[i]) + p.f_star[i] + reroute_cost(p, i);
    r.add("cycle_lemma", "cycle " + std::to_string(c) + " from " + facility_subject(p, d.cycles[c].front()), 0,
          rhs);
  }
  return r;
}

VerificationReport check_s2_claims(const PairedSolutions& p, const ClassPartition& part) {
  if (part.variant != Variant::CaptureBased) throw InvalidInput("S2 distance claims need the capture-based classes");
  VerificationReport r;
  const auto capt = captured_by(p);
  for (FacilityId i = 0; i < p.k(); ++i) {
    if (part.cls[i] != SClass::S2) continue;
    const FacilityId centre = part.cent[i];
    const __int128 lhs = static_cast<__int128>(weight(p, i)) * part.t * p.dist(p.s[i], p.o[centre]);
    __int128 rhs = 0;
    for (FacilityId c : capt[i]) {
      for (int j : p.served_by_o[c]) {
        rhs += static_cast<__int128>(p.instance->clients[j].demand) * (static_cast<__int128>(p.c[j]) + p.c_star[j]);
      }
    }
    r.add("s2_distance", facility_subject(p, i), lhs, rhs);
  }
  return r;
}

VerificationReport check_s2_swap_inequality(const Instance& instance, const PairedSolutions& p,
                                            const Decomposition& d, const ClassPartition& part, Location s,
                                            int certified_rho) {
  if (part.variant != Variant::PathDecomposition) {
    throw InvalidInput("S2 swap inequality needs the path-decomposition classes");
  }
  if (!instance.unit_weights()) throw InvalidInput("S2 swap inequality is stated for unit weights");
  if (s < 0 || s >= instance.n() || p.s_owner[s] < 0) throw InvalidInput(std::to_string(s) + " is not in S");
  const FacilityId a = p.s_owner[s];
  if (part.cls[a] != SClass::S2) throw InvalidInput(std::to_string(s) + " is not in S2");
  const FacilityId centre = part.cent[a];
  const Cost t = part.t;

  std::vector<Location> out{p.s[a]};
  for (FacilityId tail : d.tails(a)) out.push_back(p.s[tail]);
  std::vector<Location> in;
  for (FacilityId c : d.capt[a]) in.push_back(p.o[c]);
  std::vector<char> in_x(static_cast<std::size_t>(instance.n()), 0);
  for (Location x : out) in_x[x] = 1;

  // A location of S can only be captured by itself, so drop it from both sides.
  std::vector<Location> net_out, net_in;
  std::sort(out.begin(), out.end());
  std::sort(in.begin(), in.end());
  std::set_difference(out.begin(), out.end(), in.begin(), in.end(), std::back_inserter(net_out));
  std::set_difference(in.begin(), in.end(), out.begin(), out.end(), std::back_inserter(net_in));

  const auto index = build_index(instance, p.local.destinations);
  const SwapMove move = evaluate_swap(instance, p.local, index, net_out, net_in);

  __int128 rhs = 0;
  for (int path : d.captured_paths[a]) {
    for (FacilityId i : d.paths[path]) rhs += 2 * t * static_cast<__int128>(p.f_star[i]);
  }
  std::vector<char> in_d_star(p.c.size(), 0);
  for (int j : p.served_by_o[centre]) {
    in_d_star[j] = 1;
    const __int128 dj = instance.clients[j].demand;
    rhs += dj * ((t + 1) * static_cast<__int128>(p.c_star[j]) - (t - 1) * static_cast<__int128>(p.c[j]));
  }
  for (std::size_t j = 0; j < p.c.size(); ++j) {
    if (in_d_star[j] || !in_x[p.sigma[j]]) continue;
    rhs += 2 * t * static_cast<__int128>(instance.clients[j].demand) * p.c_star[j];
  }

  VerificationReport r;
  const std::string subject = facility_subject(p, a) + " |X|=" + std::to_string(net_out.size());
  r.add("s2_swap_upper", subject, static_cast<__int128>(t) * move.delta, rhs);
  if (certified_rho >= static_cast<int>(net_out.size())) r.add("s2_swap_lower", subject, 0, move.delta);
  return r;
}

VerificationReport check_decomposition(const PairedSolutions& p, const Decomposition& d) {
  const int k = p.k();
  VerificationReport r;

  std::vector<int> seen(k, 0);
  for (const auto* group : {&d.paths, &d.cycles}) {
    for (const auto& element : *group) {
      for (FacilityId i : element) ++seen[i];
    }
  }
  Cost cover = 0;
  for (int c : seen) cover += c == 1 ? 0 : 1;
  r.add("decomposition_cover", "triples covered exactly once", cover, 0);

  Cost chain = 0;
  for (const auto& path : d.paths) {
    for (std::size_t m = 0; m + 1 < path.size(); ++m) chain += p.succ[path[m]] == path[m + 1] ? 0 : 1;
  }
  for (const auto& cycle : d.cycles) {
    for (std::size_t m = 0; m < cycle.size(); ++m) chain += p.succ[cycle[m]] == cycle[(m + 1) % cycle.size()] ? 0 : 1;
  }
  r.add("decomposition_arcs", "consecutive triples joined by sigma(o_i) = s_next", chain, 0);

  Cost sources = 0;
  Cost epath_outside = 0;
  for (const auto& path : d.paths) {
    sources += d.capt[path.front()].empty() ? 0 : 1;
    epath_outside += std::find(path.begin(), path.end(), p.succ[path.back()]) == path.end() ? 0 : 1;
  }
  r.add("path_start_source", "path starts have no incoming arc", sources, 0);
  r.add("epath_sigma_outside", "sigma(epath(P)) not on P", epath_outside, 0);

  Cost identity = 0;
  for (FacilityId i = 0; i < k; ++i) {
    if (d.capt[i].empty()) continue;
    const auto pc = static_cast<Cost>(d.captured_paths[i].size());
    const auto expect = static_cast<Cost>(d.capt[i].size()) - 1;
    const auto t_size = static_cast<Cost>(d.tails(i).size());
    const auto h_size = static_cast<Cost>(d.heads(i).size());
    const bool cent_ok = d.cent[i] >= 0 && std::find(d.capt[i].begin(), d.capt[i].end(), d.cent[i]) != d.capt[i].end();
    if (pc != expect || t_size != expect || h_size != expect || !cent_ok) ++identity;
  }
  r.add("captured_paths_identity", "|P_c(s)| = |T(s)| = |H(s)| = |capt(s)| - 1", identity, 0);
  return r;
}

// ---------------------------------------------------------------------------

HGraph build_hgraph(const PairedSolutions& p, const ClassPartition& part) {
  const int k = p.k();
  HGraph h;
  h.succ = p.succ;
  h.center.assign(k, false);
  for (FacilityId i = 0; i < k; ++i) h.center[i] = part.cent[h.succ[i]] == i;

  std::vector<int> center_in(k, 0);
  for (FacilityId i = 0; i < k; ++i) {
    if (h.center[i]) ++center_in[h.succ[i]];
  }
  std::vector<char> used(k, 0);
  for (FacilityId i = 0; i < k; ++i) {
    if (center_in[i] != 0) continue;
    std::vector<FacilityId> path;
    FacilityId cur = i;
    while (!used[cur]) {
      used[cur] = 1;
      path.push_back(cur);
      if (!h.center[cur]) break;
      cur = h.succ[cur];
    }
    h.center_paths.push_back(std::move(path));
  }
  for (FacilityId i = 0; i < k; ++i) {
    if (used[i]) continue;
    std::vector<FacilityId> cycle;
    for (FacilityId cur = i; !used[cur]; cur = h.succ[cur]) {
      used[cur] = 1;
      cycle.push_back(cur);
    }
    h.center_cycles.push_back(std::move(cycle));
  }

  // Weak components and the root cycle of each.
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (FacilityId i = 0; i < k; ++i) parent[find(i)] = find(h.succ[i]);
  h.component.assign(k, -1);
  std::vector<int> label(k, -1);
  int components = 0;
  for (FacilityId i = 0; i < k; ++i) {
    const int root = find(i);
    if (label[root] < 0) label[root] = components++;
    h.component[i] = label[root];
  }
  h.root_cycles.assign(components, {});
  std::vector<char> state(k, 0);
  for (FacilityId i = 0; i < k; ++i) {
    std::vector<FacilityId> stack;
    FacilityId cur = i;
    while (state[cur] == 0) {
      state[cur] = 1;
      stack.push_back(cur);
      cur = h.succ[cur];
    }
    if (state[cur] == 1) {
      auto first = std::find(stack.begin(), stack.end(), cur);
      h.root_cycles[h.component[cur]].assign(first, stack.end());
    }
    for (FacilityId v : stack) state[v] = 2;
  }
  return h;
}

VerificationReport check_hgraph(const PairedSolutions& p, const HGraph& h) {
  const int k = p.k();
  VerificationReport r;
  Cost outdegree = 0;
  for (FacilityId i = 0; i < k; ++i) {
    const bool ok = h.succ[i] >= 0 && h.succ[i] < k && p.s[h.succ[i]] == p.nearest_s[p.o[i]];
    outdegree += ok ? 0 : 1;
  }
  r.add("hgraph_outdegree", "each facility has exactly one arc (i, i') with sigma(o_i) = s_i'", outdegree, 0);

  std::vector<int> center_in(k, 0);
  for (FacilityId i = 0; i < k; ++i) {
    if (h.center[i]) ++center_in[h.succ[i]];
  }
  Cost indegree = 0;
  for (int c : center_in) indegree += c <= 1 ? 0 : 1;
  r.add("center_indegree", "center arcs enter each facility at most once", indegree, 0);

  std::vector<int> seen(k, 0);
  Cost broken = 0;
  for (const auto& path : h.center_paths) {
    for (std::size_t m = 0; m < path.size(); ++m) {
      ++seen[path[m]];
      if (m + 1 < path.size() && !(h.center[path[m]] && h.succ[path[m]] == path[m + 1])) ++broken;
    }
    if (h.center[path.back()] && std::find(path.begin(), path.end(), h.succ[path.back()]) == path.end()) ++broken;
  }
  for (const auto& cycle : h.center_cycles) {
    for (std::size_t m = 0; m < cycle.size(); ++m) {
      ++seen[cycle[m]];
      if (!(h.center[cycle[m]] && h.succ[cycle[m]] == cycle[(m + 1) % cycle.size()])) ++broken;
    }
  }
  Cost cover = 0;
  for (int c : seen) cover += c == 1 ? 0 : 1;
  r.add("center_cover", "center paths and cycles cover each facility once", cover, 0);
  r.add("center_structure", "center paths and cycles follow center arcs", broken, 0);

  Cost roots = 0;
  for (const auto& cycle : h.root_cycles) roots += cycle.empty() ? 1 : 0;
  r.add("hgraph_root_cycles", "each component has one root cycle", roots, 0);
  return r;
}

// ---------------------------------------------------------------------------

VerificationReport verify_all(const Instance& instance, const Solution& local, const Solution& reference,
                              const VerifyOptions& options) {
  VerificationReport report;
  report.t = options.t;
  report.variant = to_string(Variant::PathDecomposition) + "+" + to_string(Variant::CaptureBased);

  const PairedSolutions p = pair(instance, local, reference);
  {
    __int128 sum_s = 0, sum_o = 0;
    for (FacilityId i = 0; i < p.k(); ++i) {
      sum_s += p.f[i];
      sum_o += p.f_star[i];
    }
    for (std::size_t j = 0; j < p.c.size(); ++j) {
      sum_s += static_cast<__int128>(instance.clients[j].demand) * p.c[j];
      sum_o += static_cast<__int128>(instance.clients[j].demand) * p.c_star[j];
    }
    const Cost mismatches = (sum_s == p.local.total ? 0 : 1) + (sum_o == p.reference.total ? 0 : 1);
    report.add("pair_totals", "sum f_i + sum d_j c_j equals each solution's total", mismatches, 0);
  }

  const Decomposition d = decompose(p);
  report.append(check_decomposition(p, d));
  const auto by_path = classify(p, d, options.t, Variant::PathDecomposition);
  const auto by_capture = classify(p, d, options.t, Variant::CaptureBased);
  for (const auto* part : {&by_path, &by_capture}) {
    std::vector<Location> s3_outside;
    std::vector<Location> s01;
    std::merge(part->s0.begin(), part->s0.end(), part->s1.begin(), part->s1.end(), std::back_inserter(s01));
    std::set_difference(part->s3.begin(), part->s3.end(), s01.begin(), s01.end(), std::back_inserter(s3_outside));
    const auto sizes = static_cast<Cost>(part->s0.size() + part->s1.size() + part->s2.size());
    const Cost violations = (sizes == p.k() ? 0 : 1) + static_cast<Cost>(s3_outside.size());
    report.add("partition", to_string(part->variant) + ": S0, S1, S2 partition S and S3 within S0 u S1", violations,
               0);
  }

  report.append(check_reassignment_lemma(p));

  if (!instance.single_metric()) {
    report.notes.push_back(
        "movement and assignment metrics differ: single-metric lemmas and global bounds are not applicable, skipped");
    return report;
  }

  if (movement_cost_value(instance, p.s) == p.local.matching_cost) {
    report.append(check_cycle_lemma(p, d));
  } else {
    report.notes.push_back("local destinations are not a min-cost matching onto S: cycle lemma skipped");
  }
  report.append(check_all_shift_bounds(p, d));
  report.append(check_s2_claims(p, by_capture));
  report.append(check_hgraph(p, build_hgraph(p, by_capture)));

  int certified_rho = 0;
  if (options.rho >= 1) {
    const auto cert = certify_local_optimum(instance, p.local, options.rho, options.jobs);
    if (cert.certified) {
      certified_rho = options.rho;
    } else {
      report.notes.push_back("local solution is not a " + std::to_string(options.rho) +
                             "-swap local optimum: lower bounds and global bound skipped");
    }
  }

  if (instance.unit_weights()) {
    for (Location s : by_path.s2) {
      report.append(check_s2_swap_inequality(instance, p, d, by_path, s, certified_rho));
    }
  } else if (!by_path.s2.empty()) {
    report.notes.push_back("weighted instance: S2 swap inequality skipped");
  }

  if (certified_rho >= 1 && options.reference_is_optimal && p.reference.total != kInf) {
    const __int128 lhs = 2 * (static_cast<__int128>(p.local.matching_cost) + p.local.assignment_cost);
    const __int128 rhs = 249 * static_cast<__int128>(p.reference.matching_cost) +
                         998 * static_cast<__int128>(p.reference.assignment_cost);
    report.add("single_swap_global_bound", "2(F + C) <= 249 F* + 998 C*", lhs, rhs);
  } else {
    report.notes.push_back("global bound not checked (needs a certified local optimum and an optimal reference)");
  }
  return report;
}

}  // namespace mfl::analysis
