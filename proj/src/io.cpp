#include "mfl/io.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace mfl::io {

namespace {

json cost_to_json(Cost c) { return c == kInf ? json("INF") : json(c); }

Cost parse_cost(const json& v, Cost scale, const std::string& where) {
  if (v.is_string()) {
    if (v.get<std::string>() == "INF") return kInf;
    throw InvalidInput(where + ": unknown token " + v.dump());
  }
  if (v.is_number_integer()) {
    const auto raw = v.get<std::int64_t>();
    if (raw < 0) throw InvalidInput(where + ": negative cost " + std::to_string(raw));
    const Cost scaled = sat_mul(scale, raw);
    if (scaled == kInf) throw InvalidInput(where + ": cost overflows after scaling");
    return scaled;
  }
  if (v.is_number_float()) {
    const long double x = v.get<double>() * static_cast<long double>(scale);
    if (x < 0) throw InvalidInput(where + ": negative cost " + v.dump());
    const long double r = std::round(x);
    if (std::fabs(x - r) > 1e-9L * std::max<long double>(1, std::fabs(x))) {
      throw InvalidInput(where + ": " + v.dump() + " is not integral after scaling by " + std::to_string(scale));
    }
    return static_cast<Cost>(r);
  }
  throw InvalidInput(where + ": expected a number or \"INF\"");
}

std::int64_t get_int(const json& obj, const char* key, std::int64_t fallback, bool required) {
  if (!obj.contains(key)) {
    if (required) throw InvalidInput(std::string("missing field \"") + key + "\"");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("field \"") + key + "\" must be an integer");
  return v.get<std::int64_t>();
}

Metric parse_metric(const json& doc, const std::string& prefix, int n, Cost scale) {
  const std::string edges_key = prefix + "_edges";
  const std::string matrix_key = prefix + "_matrix";
  if (doc.contains(edges_key) && doc.contains(matrix_key)) {
    throw InvalidInput("give either " + edges_key + " or " + matrix_key + ", not both");
  }
  if (doc.contains(edges_key)) {
    std::vector<Edge> edges;
    for (const auto& e : doc.at(edges_key)) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw InvalidInput(edges_key + ": each edge must be [u, v, cost]");
      }
      edges.push_back({e[0].get<Location>(), e[1].get<Location>(), parse_cost(e[2], scale, edges_key)});
    }
    return metric_closure(n, edges);
  }
  if (doc.contains(matrix_key)) {
    const auto& rows = doc.at(matrix_key);
    if (!rows.is_array() || static_cast<int>(rows.size()) != n) throw InvalidInput(matrix_key + " must have n rows");
    std::vector<Cost> entries;
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<int>(row.size()) != n) throw InvalidInput(matrix_key + " must have n columns");
      for (const auto& v : row) entries.push_back(parse_cost(v, scale, matrix_key));
    }
    Metric m(n, std::move(entries));
    const auto violations = validate_metric(m);
    if (!violations.empty()) {
      std::ostringstream msg;
      msg << matrix_key << " is not a metric (" << violations.size() << " violations), first: "
          << violations.front().message;
      throw InvalidInput(msg.str());
    }
    return m;
  }
  throw InvalidInput("missing " + edges_key + " or " + matrix_key);
}

json metric_to_json(const Metric& m) {
  json rows = json::array();
  for (Location u = 0; u < m.size(); ++u) {
    json row = json::array();
    for (Location v = 0; v < m.size(); ++v) row.push_back(cost_to_json(m(u, v)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidInput("instance must be a JSON object");
  if (get_int(doc, "version", 1, false) != 1) throw InvalidInput("unsupported instance version");
  const auto n = get_int(doc, "n", 0, true);
  if (n < 0 || n > 1'000'000) throw InvalidInput("n out of range");
  Instance inst;
  inst.scale = get_int(doc, "scale", 1, false);
  if (inst.scale < 1) throw InvalidInput("scale must be >= 1");
  // Written instances carry costs that are already multiplied by the scale.
  const bool prescaled = doc.contains("prescaled") && doc.at("prescaled").is_boolean() && doc.at("prescaled").get<bool>();
  const Cost factor = prescaled ? 1 : inst.scale;
  inst.assign = parse_metric(doc, "assign", static_cast<int>(n), factor);
  const bool has_move = doc.contains("move_edges") || doc.contains("move_matrix");
  inst.move = has_move ? parse_metric(doc, "move", static_cast<int>(n), factor) : inst.assign;
  if (!doc.contains("facilities") || !doc.at("facilities").is_array()) throw InvalidInput("missing facilities array");
  for (const auto& f : doc.at("facilities")) {
    inst.facilities.push_back({static_cast<Location>(get_int(f, "loc", 0, true)), get_int(f, "weight", 1, false)});
  }
  if (doc.contains("clients")) {
    for (const auto& c : doc.at("clients")) {
      inst.clients.push_back({static_cast<Location>(get_int(c, "loc", 0, true)), get_int(c, "demand", 1, false)});
    }
  }
  inst.validate();
  return inst;
}

json instance_to_json(const Instance& instance) {
  json doc;
  doc["version"] = 1;
  doc["n"] = instance.n();
  doc["scale"] = instance.scale;
  if (instance.scale != 1) doc["prescaled"] = true;
  doc["assign_matrix"] = metric_to_json(instance.assign);
  if (!instance.single_metric()) doc["move_matrix"] = metric_to_json(instance.move);
  json facilities = json::array();
  for (const auto& f : instance.facilities) facilities.push_back({{"loc", f.loc}, {"weight", f.weight}});
  doc["facilities"] = std::move(facilities);
  json clients = json::array();
  for (const auto& c : instance.clients) clients.push_back({{"loc", c.loc}, {"demand", c.demand}});
  doc["clients"] = std::move(clients);
  return doc;
}

json solution_to_json(const Solution& solution) {
  json doc;
  doc["destinations"] = solution.destinations;
  doc["matching_cost"] = cost_to_json(solution.matching_cost);
  doc["assignment_cost"] = cost_to_json(solution.assignment_cost);
  doc["total"] = cost_to_json(solution.total);
  doc["sigma"] = solution.sigma;
  return doc;
}

Solution solution_from_json(const Instance& instance, const json& doc) {
  if (!doc.is_object() || !doc.contains("destinations") || !doc.at("destinations").is_array()) {
    throw InvalidInput("solution must contain a destinations array");
  }
  std::vector<Location> destinations;
  for (const auto& v : doc.at("destinations")) {
    if (!v.is_number_integer()) throw InvalidInput("destinations must be integers");
    destinations.push_back(v.get<Location>());
  }
  return evaluate(instance, destinations);
}

json report_to_json(const analysis::VerificationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"subject", c.subject},
                      {"lhs", c.lhs},
                      {"rhs", c.rhs},
                      {"slack", c.slack},
                      {"pass", c.pass}});
  }
  json doc;
  doc["checks"] = std::move(checks);
  doc["variant"] = report.variant;
  doc["t"] = report.t;
  doc["pass"] = report.pass();
  doc["notes"] = report.notes;
  return doc;
}

void write_trace_csv(std::ostream& out, const SearchTrace& trace) {
  auto join = [](const std::vector<Location>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(xs[i]);
    }
    return s;
  };
  out << "iter,delta,total_before,total_after,X,Y,candidates,millis\n";
  for (const auto& e : trace.entries) {
    out << e.iter << ',' << e.delta << ',' << e.total_before << ',' << e.total_after << ',' << join(e.out) << ','
        << join(e.in) << ',' << e.candidates << ',' << e.millis << '\n';
  }
}

std::string dump(const json& doc) { return doc.dump() + "\n"; }

}  // namespace mfl::io
