#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pnmetric/axioms.hpp"
#include "pnmetric/errors.hpp"
#include "pnmetric/fixed_point.hpp"
#include "pnmetric/io.hpp"
#include "pnmetric/sequence.hpp"
#include "pnmetric/topology.hpp"

using namespace pnmetric;

namespace {

constexpr int kExitUsage = 64;

struct RunConfig {
    double tol = 1e-9;
    std::uint64_t seed = 42;
    std::string format = "json";
    int max_steps = 0;  // 0: 10 * |points|
    int window = -1;    // -1: default tail window
};

void render_text(const io::json& value, std::ostream& out, const std::string& prefix) {
    if (value.is_object()) {
        for (auto it = value.begin(); it != value.end(); ++it)
            render_text(it.value(), out, prefix.empty() ? it.key() : prefix + "." + it.key());
        return;
    }
    if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i)
            render_text(value[i], out, prefix + "[" + std::to_string(i) + "]");
        return;
    }
    if (value.is_number_float())
        out << prefix << ": " << io::format_double(value.get<double>()) << "\n";
    else
        out << prefix << ": " << value.dump() << "\n";
}

void emit(const io::json& doc, const RunConfig& config) {
    if (config.format == "text")
        render_text(doc, std::cout, "");
    else
        std::cout << io::stable_dump(doc);
}

std::uint64_t table_guardrail() {
    if (const char* env = std::getenv("PNMETRIC_MAX_TABLE")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        std::cerr << "warning: ignoring malformed PNMETRIC_MAX_TABLE\n";
    }
    return 1000000;
}

PartialNMetricSpace load_space_checked(const std::string& path) {
    PartialNMetricSpace space = io::load_space(path);
    std::uint64_t count = multiset_count(space.num_points(), space.arity());
    if (count > table_guardrail())
        std::cerr << "warning: table has " << count
                  << " entries, beyond the configured guardrail\n";
    return space;
}

int require_validated(PartialNMetricSpace& space, Profile profile, const RunConfig& config) {
    ValidationReport report = validate(space, profile, {config.tol});
    if (!report.pass) {
        emit(io::report_to_json(space, report), config);
        return 1;
    }
    return 0;
}

int cmd_validate(const std::string& space_file, const std::string& profile_name,
                 const RunConfig& config) {
    PartialNMetricSpace space = load_space_checked(space_file);
    ValidationReport report = validate(space, profile_from_name(profile_name), {config.tol});
    emit(io::report_to_json(space, report), config);
    return report.pass ? 0 : 1;
}

int cmd_convert(const std::string& metric_file, int n, const RunConfig& config) {
    PartialMetricSpace pm = io::load_partial_metric(metric_file);
    PartialNMetricSpace space = from_partial_metric(pm, n, true, config.tol);
    emit(io::space_to_json(space), config);
    return 0;
}

int cmd_analyze_topology(PartialNMetricSpace& space, bool dot, const RunConfig& config) {
    if (int rc = require_validated(space, Profile::partial_n_metric, config)) return rc;
    io::json doc;
    SeparationClass cls = separation_class(space);
    doc["separation"] = {{"is_T0", cls.is_T0},
                         {"is_T1", cls.is_T1},
                         {"t0_witnesses", cls.t0_witnesses},
                         {"t1_witnesses", cls.t1_witnesses}};
    BasisCheckResult basis = basis_check(space, 1000, config.seed);
    doc["basis_check"] = {{"pass", basis.pass}, {"trials", basis.trials_run}};
    if (!basis.pass) doc["basis_check"]["counterexample"] = basis.counterexample;

    // One ball per point at every positive gap value, enough to see every
    // distinct neighborhood.
    io::json balls = io::json::array();
    for (int x = 0; x < space.num_points(); ++x) {
        for (int y = 0; y < space.num_points(); ++y) {
            double eps = space.mixed(x, y) - space.self_distance(x);
            if (eps <= 0.0) continue;
            Ball ball = open_ball(space, x, eps);
            io::json members = io::json::array();
            for (int m : ball.members) members.push_back(space.point_name(m));
            balls.push_back({{"center", space.point_name(x)},
                             {"radius", eps},
                             {"members", members}});
        }
    }
    doc["balls"] = balls;
    if (is_n_metric(space, config.tol)) {
        validate(space, Profile::n_metric, {config.tol});
        TopologyComparison cmp = compare_topologies(space);
        doc["metric_topology_comparison"] = {{"pass", cmp.pass}};
        if (!cmp.pass) doc["metric_topology_comparison"]["counterexample"] = cmp.counterexample;
    }
    if (dot) doc["specialization_preorder_dot"] = specialization_preorder_dot(space);
    emit(doc, config);
    return 0;
}

int cmd_analyze_metric(PartialNMetricSpace& space, const RunConfig& config) {
    if (int rc = require_validated(space, Profile::partial_n_metric, config)) return rc;
    emit(io::metric_to_json(associated_metric(space)), config);
    return 0;
}

std::vector<std::string> parse_sequence_arg(const std::string& arg) {
    // Either a JSON array of point names or whitespace-separated names.
    std::vector<std::string> names;
    std::string trimmed = arg;
    auto first = trimmed.find_first_not_of(" \t");
    if (first != std::string::npos && trimmed[first] == '[') {
        io::json doc;
        try {
            doc = io::json::parse(trimmed);
        } catch (const io::json::parse_error& e) {
            throw ParseError(std::string("bad sequence argument: ") + e.what());
        }
        if (!doc.is_array()) throw SchemaError("sequence must be a JSON array of point names");
        for (const auto& item : doc) {
            if (!item.is_string()) throw SchemaError("sequence elements must be point names");
            names.push_back(item.get<std::string>());
        }
    } else {
        std::istringstream in(trimmed);
        std::string token;
        while (in >> token) names.push_back(token);
    }
    return names;
}

int cmd_analyze_sequence(PartialNMetricSpace& space, const std::string& sequence_arg,
                         const RunConfig& config) {
    if (int rc = require_validated(space, Profile::partial_n_metric, config)) return rc;
    SequencePrefix prefix = SequencePrefix::from_names(space, parse_sequence_arg(sequence_arg));
    CauchyVerdict cauchy = estimate_cauchy(prefix, config.window, config.tol);

    io::json doc;
    doc["cauchy"] = {{"holds_on_prefix", cauchy.holds_on_prefix},
                     {"window", cauchy.window},
                     {"residual", cauchy.residual},
                     {"tolerance", cauchy.tolerance}};
    if (cauchy.r_estimate) doc["cauchy"]["r_estimate"] = *cauchy.r_estimate;

    io::json candidates = io::json::array();
    for (int a = 0; a < space.num_points(); ++a) {
        io::json row = {{"point", space.point_name(a)},
                        {"is_limit", check_limit(prefix, a, config.tol, config.window)}};
        if (cauchy.holds_on_prefix)
            row["is_special_limit"] = check_special_limit(prefix, a, config.tol, config.window);
        candidates.push_back(row);
    }
    doc["limit_candidates"] = candidates;
    if (cauchy.holds_on_prefix) {
        auto special = special_limit_search(prefix, config.tol, config.window);
        doc["special_limit"] = special ? io::json(space.point_name(*special)) : io::json();
    }
    emit(doc, config);
    return 0;
}

int solve_exit_code(SolveStatus status) {
    switch (status) {
        case SolveStatus::fixed_point: return 0;
        case SolveStatus::not_cauchy:
        case SolveStatus::no_special_limit: return 2;
        case SolveStatus::hypotheses_unsatisfied: return 3;
    }
    return 3;
}

int cmd_solve(const std::string& space_file, const std::string& map_file,
              const std::string& start, bool strong, const std::string& certify, double r,
              double lambda, const RunConfig& config) {
    PartialNMetricSpace space = load_space_checked(space_file);
    if (int rc = require_validated(space, strong ? Profile::strong : Profile::partial_n_metric,
                                   config))
        return rc;
    SelfMap map = io::load_map(space, map_file);
    int x0 = space.point_index(start);

    SolveConfig solve_config;
    solve_config.tol = config.tol;
    solve_config.max_steps = config.max_steps;
    solve_config.strong_mode = strong;

    FixedPointResult result;
    if (certify.empty()) {
        result = solve_fixed_point(space, map, x0, solve_config);
    } else {
        CertificateRequest request;
        request.kind = certify == "phi" ? CertificateKind::phi_r_contractive
                                        : CertificateKind::r_contractive;
        request.r = r;
        request.lambda = lambda;
        result = solve_via_contractive(space, map, x0, request, solve_config).result;
    }
    emit(io::result_to_json(space, result), config);
    return solve_exit_code(result.status);
}

int cmd_orbit(const std::string& space_file, const std::string& map_file,
              const std::string& start, const RunConfig& config) {
    PartialNMetricSpace space = load_space_checked(space_file);
    SelfMap map = io::load_map(space, map_file);
    int max_steps = config.max_steps > 0 ? config.max_steps : 10 * space.num_points();
    OrbitTrace trace = orbit(map, space.point_index(start), std::max(max_steps, 2));
    emit(io::orbit_to_json(space, trace), config);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite partial n-metric spaces: validation, topology, sequences, fixed points"};
    app.require_subcommand(1);

    RunConfig config;
    app.add_option("--tol", config.tol, "Comparison tolerance")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", config.seed, "Seed for randomized checks");
    app.add_option("--format", config.format, "Output format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--max-steps", config.max_steps, "Orbit step limit (0: 10 * |points|)");
    app.add_option("--window", config.window, "Tail window for sequence verdicts");

    std::string space_file, metric_file, map_file, start, profile = "partial_n_metric";
    std::string sequence_arg, certify;
    int n = 3;
    bool strong = false, dot = false;
    double r = 0.0, lambda = 0.5;

    auto* validate_cmd = app.add_subcommand("validate", "Check the axioms of a space document");
    validate_cmd->add_option("--space", space_file, "Space JSON file")->required();
    validate_cmd->add_option("--profile", profile, "Axiom profile")
        ->check(CLI::IsMember({"partial_n_metric", "strong", "n_metric"}));

    auto* convert_cmd =
        app.add_subcommand("convert", "Build a space from a partial metric via pairwise sums");
    convert_cmd->add_option("--input", metric_file, "Partial metric JSON file")->required();
    convert_cmd->add_option("--n", n, "Arity of the generated space")->check(CLI::Range(2, 16));

    auto* analyze_cmd = app.add_subcommand("analyze", "Topology, metric, or sequence reports");
    std::string target;
    analyze_cmd->add_option("target", target, "topology | metric | sequence")
        ->required()
        ->check(CLI::IsMember({"topology", "metric", "sequence"}));
    analyze_cmd->add_option("--space", space_file, "Space JSON file")->required();
    analyze_cmd->add_option("--sequence", sequence_arg,
                            "Point names (JSON array or whitespace separated)");
    analyze_cmd->add_flag("--dot", dot, "Include the specialization preorder as DOT");

    auto* solve_cmd = app.add_subcommand("solve", "Run the fixed-point engine on an orbit");
    solve_cmd->add_option("--space", space_file, "Space JSON file")->required();
    solve_cmd->add_option("--map", map_file, "Self-map JSON file")->required();
    solve_cmd->add_option("--start", start, "Orbit start point")->required();
    solve_cmd->add_flag("--strong", strong, "Use the strong-space hypothesis cases");
    solve_cmd->add_option("--certify", certify, "Certificate kind before solving")
        ->check(CLI::IsMember({"r", "phi"}));
    solve_cmd->add_option("--r", r, "Certificate target value r");
    solve_cmd->add_option("--lambda", lambda, "Linear contraction factor (phi only)");

    auto* orbit_cmd = app.add_subcommand("orbit", "Dump the orbit trace of a start point");
    orbit_cmd->add_option("--space", space_file, "Space JSON file")->required();
    orbit_cmd->add_option("--map", map_file, "Self-map JSON file")->required();
    orbit_cmd->add_option("--start", start, "Orbit start point")->required();

    // Let --tol, --format and friends appear after the subcommand name too.
    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*validate_cmd) return cmd_validate(space_file, profile, config);
        if (*convert_cmd) return cmd_convert(metric_file, n, config);
        if (*analyze_cmd) {
            PartialNMetricSpace space = load_space_checked(space_file);
            if (target == "topology") return cmd_analyze_topology(space, dot, config);
            if (target == "metric") return cmd_analyze_metric(space, config);
            if (sequence_arg.empty()) {
                std::cerr << "error: analyze sequence requires --sequence\n";
                return kExitUsage;
            }
            return cmd_analyze_sequence(space, sequence_arg, config);
        }
        if (*solve_cmd)
            return cmd_solve(space_file, map_file, start, strong, certify, r, lambda, config);
        if (*orbit_cmd) return cmd_orbit(space_file, map_file, start, config);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownPoint& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
