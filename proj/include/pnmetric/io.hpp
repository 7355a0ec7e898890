#pragma once

#include <string>

#include <json.hpp>

#include "pnmetric/axioms.hpp"
#include "pnmetric/fixed_point.hpp"
#include "pnmetric/space.hpp"

namespace pnmetric::io {

using nlohmann::json;

// Deterministic serialization: keys sorted (nlohmann objects are key-ordered
// maps), floats in shortest round-trip form capped at 12 significant digits,
// so identical inputs produce byte-identical reports.
std::string format_double(double value);
std::string stable_dump(const json& value, int indent = 2);

// Space document: { "points": [...], "n": int, "entries": [ { "multiset":
// [...], "value": num } ... ] }. Entries may list multisets in any order;
// loading canonicalizes and rejects duplicates.
json space_to_json(const PartialNMetricSpace& space);
PartialNMetricSpace space_from_json(const json& doc);
PartialNMetricSpace load_space(const std::string& path);

// Partial metric document: { "points": [...], "entries": [ { "pair":
// [x, y], "value": num } ... ] }.
json partial_metric_to_json(const PartialMetricSpace& pspace);
PartialMetricSpace partial_metric_from_json(const json& doc);
PartialMetricSpace load_partial_metric(const std::string& path);

// Self-map document: { "map": { "<point>": "<point>", ... } }.
SelfMap map_from_json(const PartialNMetricSpace& space, const json& doc);
SelfMap load_map(const PartialNMetricSpace& space, const std::string& path);
json map_to_json(const SelfMap& map);

json metric_to_json(const MetricSpace& metric);
json violation_to_json(const PartialNMetricSpace& space, const Violation& violation);
json report_to_json(const PartialNMetricSpace& space, const ValidationReport& report);
json certificate_to_json(const ContractivityCertificate& cert);
json result_to_json(const PartialNMetricSpace& space, const FixedPointResult& result);
json orbit_to_json(const PartialNMetricSpace& space, const OrbitTrace& trace);

json parse_file(const std::string& path);  // throws ParseError

}  // namespace pnmetric::io
