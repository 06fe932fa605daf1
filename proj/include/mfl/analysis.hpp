#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfl/cost.hpp"
#include "mfl/instance.hpp"

namespace mfl::analysis {

/// A local solution S and a reference solution O on the same instance with
/// every per-facility and per-client quantity the proof structures use.
/// Facility i moves to s[i] in S and o[i] in O. Holds a pointer to the
/// instance, which must outlive it.
struct PairedSolutions {
  const Instance* instance = nullptr;
  Solution local;
  Solution reference;

  std::vector<Location> s;       // per facility
  std::vector<Location> o;       // per facility
  std::vector<Cost> f;           // w_i * c_move(i, s_i)
  std::vector<Cost> f_star;      // w_i * c_move(i, o_i)
  std::vector<Cost> c;           // per client, unit distance to sigma(j)
  std::vector<Cost> c_star;      // per client, unit distance to sigma*(j)
  std::vector<Location> sigma;       // per client
  std::vector<Location> sigma_star;  // per client

  std::vector<Location> nearest_s;   // sigma(v) for every location v
  std::vector<Location> nearest_o;   // sigma*(v) for every location v
  std::vector<FacilityId> s_owner;   // location -> i with s_i = location, or -1
  std::vector<FacilityId> o_owner;   // location -> i with o_i = location, or -1

  std::vector<std::vector<int>> served_by_s;  // D(s_i), indexed by facility
  std::vector<std::vector<int>> served_by_o;  // D*(o_i), indexed by facility

  /// Facility i' with s_{i'} = sigma(o_i): the successor of i in the
  /// contracted digraph.
  std::vector<FacilityId> succ;

  int k() const { return static_cast<int>(s.size()); }
  /// Demand-weighted |D*(o_i)|.
  Cost demand_of_o(FacilityId i) const;
  /// Assignment-metric distance.
  Cost dist(Location u, Location v) const { return instance->assign(u, v); }
};

/// Throws InvalidInput if either solution does not fit the instance or has
/// repeated destinations.
PairedSolutions pair(const Instance& instance, const Solution& local, const Solution& reference);

/// Node-disjoint paths and cycles of the triple digraph. Each element is a
/// sequence of facilities i_1..i_r whose triples (s_i, i, o_i) are chained by
/// sigma(o_{i_m}) = s_{i_{m+1}} (and back to i_1 for cycles).
struct Decomposition {
  struct Place {
    bool in_cycle = false;
    int element = -1;
    int position = -1;
  };

  std::vector<std::vector<FacilityId>> paths;
  std::vector<std::vector<FacilityId>> cycles;
  std::vector<Place> place;                     // per facility
  std::vector<std::vector<FacilityId>> capt;    // capt(s_i) as facilities i' (o_{i'})
  std::vector<FacilityId> cent;                 // cent(s_i) as facility i', or -1 for nil
  std::vector<std::vector<int>> captured_paths; // P_c(s_i) as indices into `paths`

  FacilityId path_start(int path) const { return paths[path].front(); }
  FacilityId path_end(int path) const { return paths[path].back(); }
  /// T(s_i) as facilities (spath owners).
  std::vector<FacilityId> tails(FacilityId i) const;
  /// H(s_i) as facilities (epath owners).
  std::vector<FacilityId> heads(FacilityId i) const;
};

/// Cycles first, then maximal paths from in-degree-zero S nodes; every choice
/// goes to the lowest S location.
Decomposition decompose(const PairedSolutions& paired);

enum class Variant { PathDecomposition, CaptureBased };
enum class SClass { S0, S1, S2 };

std::string to_string(Variant variant);

struct ClassPartition {
  int t = 2;
  Variant variant = Variant::PathDecomposition;
  std::vector<SClass> cls;        // per facility (location s_i)
  std::vector<bool> in_s3;        // per facility
  std::vector<FacilityId> cent;   // cent(s_i) under this variant, -1 for nil
  std::vector<Location> s0, s1, s2, s3;  // sorted locations
};

/// Path-decomposition classes use the arc-based cent and |D*(cent(s))|; the
/// capture-based classes use the captured location closest to s and the
/// threshold max(w_i, w_{i'}) * t on |D*(capt(s))|, which is t with unit
/// weights. Throws InvalidInput when t < 2.
ClassPartition classify(const PairedSolutions& paired, const Decomposition& decomposition, int t,
                        Variant variant);

struct CheckEntry {
  std::string name;
  std::string subject;
  Cost lhs = 0;
  Cost rhs = 0;
  Cost slack = 0;  // rhs - lhs
  bool pass = true;
};

struct VerificationReport {
  std::vector<CheckEntry> checks;
  std::vector<std::string> notes;
  std::string variant;
  int t = 2;

  bool pass() const;
  void add(std::string name, std::string subject, __int128 lhs, __int128 rhs);
  void append(const VerificationReport& other);
  /// Number of entries with the given name.
  std::size_t count(const std::string& name) const;
};

/// c(j, sigma(sigma*(j))) - c(j, sigma(j)) <= 2 c*_j for every client.
VerificationReport check_reassignment_lemma(const PairedSolutions& paired);

/// shift(s, o) along the s ~> o subpath of the element containing both. With
/// unit weights asserts shift <= 2 sum f*_i - c(o, sigma(o)); otherwise asserts
/// w_i c(o_i, sigma(o_i)) <= f*_i + f_i for every facility on the subpath.
/// Throws InvalidInput when (s, o) does not bound a subpath.
VerificationReport check_shift_bound(const PairedSolutions& paired,
                                     const Decomposition& decomposition, Location s, Location o);

/// Shift value of the s ~> o subpath (no bound applied).
Cost shift_value(const PairedSolutions& paired, const Decomposition& decomposition, Location s,
                 Location o);

/// Every (s, o) subpath of every path and cycle.
VerificationReport check_all_shift_bounds(const PairedSolutions& paired,
                                          const Decomposition& decomposition);

/// 0 <= sum_{i in Z} (-f_i + f*_i + w_i c(o_i, sigma(o_i))) for every cycle Z.
VerificationReport check_cycle_lemma(const PairedSolutions& paired,
                                     const Decomposition& decomposition);

/// For s in S2 (capture-based): w t c(s, cent(s)) <= sum_{j in D*(capt(s))} d_j (c_j + c*_j).
VerificationReport check_s2_claims(const PairedSolutions& paired, const ClassPartition& partition);

/// Evaluates swap({s} U T(s), capt(s)) for s in S2 (path-decomposition,
/// unit weights) and checks the upper bound, cross-multiplied by t. The lower
/// bound 0 <= delta is added when `certified_rho` >= |X|.
VerificationReport check_s2_swap_inequality(const Instance& instance,
                                            const PairedSolutions& paired,
                                            const Decomposition& decomposition,
                                            const ClassPartition& partition, Location s,
                                            int certified_rho);

/// Structural invariants of the decomposition: each triple covered once,
/// chained arcs, path starts are sources, sigma(epath(P)) not on P, and
/// |P_c(s)| = |capt(s)| - 1.
VerificationReport check_decomposition(const PairedSolutions& paired,
                                       const Decomposition& decomposition);

/// Contracted digraph over facilities: arc (i, succ(i)); center arcs are
/// those with o_i = cent(s_{succ(i)}).
struct HGraph {
  std::vector<FacilityId> succ;
  std::vector<bool> center;                        // per facility: (i, succ(i)) is a center arc
  std::vector<std::vector<FacilityId>> center_paths;
  std::vector<std::vector<FacilityId>> center_cycles;
  std::vector<int> component;                      // per facility
  std::vector<std::vector<FacilityId>> root_cycles;  // per component
};

HGraph build_hgraph(const PairedSolutions& paired, const ClassPartition& partition);

/// Outdegree one, one root cycle per component, center arcs forming
/// node-disjoint paths and cycles that cover every facility.
VerificationReport check_hgraph(const PairedSolutions& paired, const HGraph& graph);

struct VerifyOptions {
  int t = 2;
  /// Swap size to certify the local solution for; 0 skips certification.
  int rho = 1;
  /// The reference is a global optimum (enables the global bound).
  bool reference_is_optimal = false;
  int jobs = 1;
};

/// Runs every check above plus, for a 1-swap local optimum against a global
/// optimum on a single metric, F + C <= 124.5 F* + 499 C*.
VerificationReport verify_all(const Instance& instance, const Solution& local,
                              const Solution& reference, const VerifyOptions& options);

}  // namespace mfl::analysis
