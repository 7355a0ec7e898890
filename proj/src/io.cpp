#include "pnmetric/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pnmetric/errors.hpp"

namespace pnmetric::io {

std::string format_double(double value) {
    if (std::isnan(value)) return "null";
    if (std::isinf(value)) return value > 0 ? "1e999" : "-1e999";
    char buf[64];
    for (int precision = 1; precision <= 12; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    std::string s(buf);
    // Keep a numeric look for integral values.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace {

void dump_impl(const json& value, std::ostringstream& out, int indent, int depth) {
    std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    switch (value.type()) {
        case json::value_t::object: {
            if (value.empty()) {
                out << "{}";
                return;
            }
            out << "{\n";
            bool first = true;
            for (auto it = value.begin(); it != value.end(); ++it) {
                if (!first) out << ",\n";
                first = false;
                out << pad << json(it.key()).dump() << ": ";
                dump_impl(it.value(), out, indent, depth + 1);
            }
            out << "\n" << close_pad << "}";
            return;
        }
        case json::value_t::array: {
            if (value.empty()) {
                out << "[]";
                return;
            }
            out << "[\n";
            bool first = true;
            for (const auto& item : value) {
                if (!first) out << ",\n";
                first = false;
                out << pad;
                dump_impl(item, out, indent, depth + 1);
            }
            out << "\n" << close_pad << "]";
            return;
        }
        case json::value_t::number_float:
            out << format_double(value.get<double>());
            return;
        default:
            out << value.dump();
            return;
    }
}

double require_number(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_number())
        throw SchemaError(std::string("missing or non-numeric field \"") + field + "\"");
    return doc[field].get<double>();
}

std::vector<std::string> require_string_array(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_array())
        throw SchemaError(std::string("missing or non-array field \"") + field + "\"");
    std::vector<std::string> out;
    for (const auto& item : doc[field]) {
        if (!item.is_string())
            throw SchemaError(std::string("non-string element in \"") + field + "\"");
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace

std::string stable_dump(const json& value, int indent) {
    std::ostringstream out;
    dump_impl(value, out, indent, 0);
    out << "\n";
    return out.str();
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError("JSON parse error in " + path + ": " + e.what());
    }
}

json space_to_json(const PartialNMetricSpace& space) {
    json entries = json::array();
    for (const auto& [key, value] : space.table()) {
        json names = json::array();
        for (int i : key) names.push_back(space.point_name(i));
        entries.push_back({{"multiset", names}, {"value", value}});
    }
    return {{"points", space.points()}, {"n", space.arity()}, {"entries", entries}};
}

PartialNMetricSpace space_from_json(const json& doc) {
    auto points = require_string_array(doc, "points");
    if (!doc.contains("n") || !doc["n"].is_number_integer())
        throw SchemaError("missing or non-integer field \"n\"");
    int n = doc["n"].get<int>();
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw SchemaError("missing or non-array field \"entries\"");
    std::vector<PartialNMetricSpace::Entry> entries;
    for (const auto& entry : doc["entries"]) {
        entries.emplace_back(require_string_array(entry, "multiset"),
                             require_number(entry, "value"));
    }
    return PartialNMetricSpace::build(std::move(points), n, entries);
}

PartialNMetricSpace load_space(const std::string& path) {
    return space_from_json(parse_file(path));
}

json partial_metric_to_json(const PartialMetricSpace& pspace) {
    json entries = json::array();
    int p = pspace.num_points();
    for (int x = 0; x < p; ++x)
        for (int y = x; y < p; ++y)
            entries.push_back({{"pair", {pspace.point_name(x), pspace.point_name(y)}},
                               {"value", pspace.at(x, y)}});
    return {{"points", pspace.points()}, {"entries", entries}};
}

PartialMetricSpace partial_metric_from_json(const json& doc) {
    auto points = require_string_array(doc, "points");
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw SchemaError("missing or non-array field \"entries\"");
    std::vector<PartialMetricSpace::Entry> entries;
    for (const auto& entry : doc["entries"]) {
        auto pair = require_string_array(entry, "pair");
        if (pair.size() != 2) throw SchemaError("\"pair\" must have exactly two points");
        entries.push_back({{pair[0], pair[1]}, require_number(entry, "value")});
    }
    return PartialMetricSpace::build(std::move(points), entries);
}

PartialMetricSpace load_partial_metric(const std::string& path) {
    return partial_metric_from_json(parse_file(path));
}

SelfMap map_from_json(const PartialNMetricSpace& space, const json& doc) {
    if (!doc.contains("map") || !doc["map"].is_object())
        throw SchemaError("missing or non-object field \"map\"");
    std::map<std::string, std::string> mapping;
    for (auto it = doc["map"].begin(); it != doc["map"].end(); ++it) {
        if (!it.value().is_string()) throw SchemaError("map image must be a point name");
        mapping[it.key()] = it.value().get<std::string>();
    }
    return SelfMap::build(space, mapping);
}

SelfMap load_map(const PartialNMetricSpace& space, const std::string& path) {
    return map_from_json(space, parse_file(path));
}

json map_to_json(const SelfMap& map) {
    json mapping = json::object();
    const auto& space = map.space();
    for (int x = 0; x < space.num_points(); ++x)
        mapping[space.point_name(x)] = space.point_name(map.apply(x));
    return {{"map", mapping}};
}

json metric_to_json(const MetricSpace& metric) {
    json entries = json::array();
    int p = metric.num_points();
    for (int x = 0; x < p; ++x)
        for (int y = x; y < p; ++y)
            entries.push_back({{"pair", {metric.points()[static_cast<std::size_t>(x)],
                                         metric.points()[static_cast<std::size_t>(y)]}},
                               {"value", metric.at(x, y)}});
    return {{"points", metric.points()}, {"entries", entries}};
}

json violation_to_json(const PartialNMetricSpace& space, const Violation& violation) {
    json tuples = json::array();
    for (const auto& key : violation.tuples) {
        json names = json::array();
        for (int i : key) names.push_back(space.point_name(i));
        tuples.push_back(names);
    }
    return {{"axiom", axiom_name(violation.axiom)},
            {"witness", violation.witness},
            {"tuples", tuples},
            {"lhs", violation.lhs},
            {"rhs", violation.rhs}};
}

json report_to_json(const PartialNMetricSpace& space, const ValidationReport& report) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back(violation_to_json(space, v));
    json counts = json::object();
    for (const auto& [axiom, count] : report.counts) counts[axiom] = count;
    return {{"profile", profile_name(report.profile)},
            {"verdict", report.pass ? "pass" : "fail"},
            {"violations", violations},
            {"total_violations", report.total_violations},
            {"counts", counts},
            {"tolerance", report.tolerance}};
}

json certificate_to_json(const ContractivityCertificate& cert) {
    json doc = {{"kind", cert.kind == CertificateKind::r_contractive ? "r_contractive"
                                                                     : "phi_r_contractive"},
                {"r", cert.r},
                {"prefix_length", cert.prefix_length},
                {"holds_on_prefix", cert.holds_on_prefix}};
    if (cert.kind == CertificateKind::r_contractive)
        doc["c_estimate"] = cert.c_estimate;
    else
        doc["lambda"] = cert.c_estimate;
    if (!cert.holds_on_prefix) doc["failure_witness"] = cert.failure_witness;
    return doc;
}

json result_to_json(const PartialNMetricSpace& space, const FixedPointResult& result) {
    json doc = {{"status", solve_status_name(result.status)}};
    if (result.fixed_point) {
        doc["fixed_point"] = space.point_name(*result.fixed_point);
        doc["self_distance_at_fp"] = result.self_distance_at_fp;
        doc["iterations"] = result.iterations;
        doc["theorem_case"] = result.theorem_case;
    }
    if (!result.diagnostic.empty()) doc["diagnostic"] = result.diagnostic;
    if (result.corollary_case) doc["corollary_case"] = *result.corollary_case;
    if (result.certificate) doc["certificate"] = certificate_to_json(*result.certificate);
    json cases = json::array();
    for (const auto& entry : result.case_log) {
        json c = {{"case", entry.name}, {"satisfied", entry.satisfied}};
        if (!entry.detail.empty()) c["detail"] = entry.detail;
        cases.push_back(c);
    }
    if (!cases.empty()) doc["case_log"] = cases;
    return doc;
}

json orbit_to_json(const PartialNMetricSpace& space, const OrbitTrace& trace) {
    json terms = json::array();
    for (int t : trace.terms) terms.push_back(space.point_name(t));
    return {{"start", space.point_name(trace.start)},
            {"terms", terms},
            {"cycle_entry", trace.cycle_entry},
            {"cycle_length", trace.cycle_length},
            {"step_values", trace.step_values}};
}

}  // namespace pnmetric::io
