#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mfl/analysis.hpp"
#include "mfl/instance.hpp"
#include "mfl/local_search.hpp"

namespace mfl::io {

using nlohmann::json;

/// Instance JSON, version 1. Matrices may contain the string "INF"; decimal
/// entries are multiplied by "scale" and must land on integers, unless
/// "prescaled" is true (as written by instance_to_json). Throws InvalidInput
/// on schema or metric violations.
Instance instance_from_json(const json& doc);
json instance_to_json(const Instance& instance);

json solution_to_json(const Solution& solution);
/// Reads "destinations" and re-evaluates; stored cost fields are ignored.
Solution solution_from_json(const Instance& instance, const json& doc);

json report_to_json(const analysis::VerificationReport& report);

/// iter,delta,total_before,total_after,X,Y,candidates,millis. Location lists
/// are space-separated inside the cell.
void write_trace_csv(std::ostream& out, const SearchTrace& trace);

/// Compact JSON text with a trailing newline.
std::string dump(const json& doc);

}  // namespace mfl::io
