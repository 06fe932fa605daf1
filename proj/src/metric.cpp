#include "mfl/metric.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace mfl {

Metric::Metric(int n) : n_(n), dist_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kInf) {
  if (n < 0) throw InvalidInput("metric size must be non-negative");
  for (Location u = 0; u < n; ++u) at(u, u) = 0;
}

Metric::Metric(int n, std::vector<Cost> entries) : n_(n), dist_(std::move(entries)) {
  if (n < 0 || dist_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidInput("metric entries must form an n x n matrix");
  }
}

namespace {

void floyd_warshall(Metric& m) {
  const int n = m.size();
  for (Location via = 0; via < n; ++via) {
    for (Location u = 0; u < n; ++u) {
      const Cost to_via = m(u, via);
      if (to_via == kInf) continue;
      for (Location v = 0; v < n; ++v) {
        const Cost through = sat_add(to_via, m(via, v));
        if (through < m(u, v)) m.at(u, v) = through;
      }
    }
  }
}

}  // namespace

Metric metric_closure(int n, const std::vector<Edge>& edges) {
  Metric m(n);
  for (const auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      std::ostringstream msg;
      msg << "edge (" << e.u << "," << e.v << ") out of range for n=" << n;
      throw InvalidInput(msg.str());
    }
    if (e.cost < 0) {
      std::ostringstream msg;
      msg << "edge (" << e.u << "," << e.v << ") has negative cost " << e.cost;
      throw InvalidInput(msg.str());
    }
    if (e.u == e.v) continue;
    const Cost c = std::min(m(e.u, e.v), e.cost);
    m.at(e.u, e.v) = c;
    m.at(e.v, e.u) = c;
  }
  floyd_warshall(m);
  return m;
}

Metric metric_closure(const Metric& m) {
  std::vector<Edge> edges;
  for (Location u = 0; u < m.size(); ++u) {
    for (Location v = 0; v < m.size(); ++v) {
      if (u != v && m(u, v) != kInf) edges.push_back({u, v, m(u, v)});
    }
  }
  return metric_closure(m.size(), edges);
}

std::vector<MetricViolation> validate_metric(const Metric& m) {
  using Kind = MetricViolation::Kind;
  std::vector<MetricViolation> out;
  const int n = m.size();
  auto describe = [](auto&&... parts) {
    std::ostringstream s;
    (s << ... << parts);
    return s.str();
  };

  for (Location u = 0; u < n; ++u) {
    for (Location v = 0; v < n; ++v) {
      if (m(u, v) < 0) {
        out.push_back({Kind::Negative, u, v, -1, describe("d(", u, ",", v, ") = ", m(u, v), " < 0")});
      }
    }
  }
  for (Location u = 0; u < n; ++u) {
    if (m(u, u) != 0) {
      out.push_back({Kind::Diagonal, u, u, -1, describe("d(", u, ",", u, ") = ", m(u, u), " != 0")});
    }
  }
  for (Location u = 0; u < n; ++u) {
    for (Location v = u + 1; v < n; ++v) {
      if (m(u, v) != m(v, u)) {
        out.push_back({Kind::Symmetry, u, v, -1,
                       describe("d(", u, ",", v, ") = ", m(u, v), " != d(", v, ",", u, ") = ", m(v, u))});
      }
    }
  }
  for (Location u = 0; u < n; ++u) {
    for (Location w = u + 1; w < n; ++w) {
      const Cost direct = m(u, w);
      for (Location v = 0; v < n; ++v) {
        if (v == u || v == w) continue;
        const Cost detour = sat_add(m(u, v), m(v, w));
        if (direct > detour) {
          out.push_back({Kind::Triangle, u, v, w,
                         describe("d(", u, ",", w, ") = ", direct, " > d(", u, ",", v, ") + d(", v, ",", w,
                                  ") = ", detour)});
        }
      }
    }
  }
  return out;
}

}  // namespace mfl
