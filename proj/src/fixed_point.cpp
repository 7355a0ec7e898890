#include "pnmetric/fixed_point.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "pnmetric/axioms.hpp"
#include "pnmetric/errors.hpp"
#include "pnmetric/tolerance.hpp"

namespace pnmetric {

SelfMap SelfMap::build(const PartialNMetricSpace& space,
                       const std::map<std::string, std::string>& mapping) {
    std::vector<int> image(static_cast<std::size_t>(space.num_points()), -1);
    for (const auto& [from, to] : mapping)
        image[static_cast<std::size_t>(space.point_index(from))] = space.point_index(to);
    for (int x = 0; x < space.num_points(); ++x)
        if (image[static_cast<std::size_t>(x)] < 0)
            throw MissingEntry("self-map has no image for point " + space.point_name(x));
    return from_indices(space, std::move(image));
}

SelfMap SelfMap::from_indices(const PartialNMetricSpace& space, std::vector<int> image) {
    if (static_cast<int>(image.size()) != space.num_points())
        throw SchemaError("self-map table size does not match the point set");
    for (int y : image)
        if (y < 0 || y >= space.num_points()) throw UnknownPoint("self-map image out of range");
    SelfMap map;
    map.space_ = &space;
    map.image_ = std::move(image);
    return map;
}

SelfMap SelfMap::identity(const PartialNMetricSpace& space) {
    std::vector<int> image(static_cast<std::size_t>(space.num_points()));
    for (int x = 0; x < space.num_points(); ++x) image[static_cast<std::size_t>(x)] = x;
    return from_indices(space, std::move(image));
}

std::vector<int> OrbitTrace::cycle_points() const {
    std::vector<int> points;
    if (!cycle_found()) return points;
    for (int k = cycle_entry; k < cycle_entry + cycle_length; ++k)
        points.push_back(terms[static_cast<std::size_t>(k)]);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

SequencePrefix OrbitTrace::prefix(const PartialNMetricSpace& space, int min_length) const {
    SequencePrefix prefix;
    prefix.space = &space;
    prefix.items = terms;
    if (cycle_found()) {
        while (static_cast<int>(prefix.items.size()) < min_length) {
            int k = cycle_entry +
                    (static_cast<int>(prefix.items.size()) - cycle_entry) % cycle_length;
            prefix.items.push_back(terms[static_cast<std::size_t>(k)]);
        }
    }
    return prefix;
}

OrbitTrace orbit(const SelfMap& map, int x0, int max_steps) {
    const auto& space = map.space();
    if (x0 < 0 || x0 >= space.num_points()) throw UnknownPoint("orbit start out of range");

    OrbitTrace trace;
    trace.start = x0;
    std::vector<int> first_seen(static_cast<std::size_t>(space.num_points()), -1);
    int current = x0;
    while (static_cast<int>(trace.terms.size()) < max_steps) {
        if (first_seen[static_cast<std::size_t>(current)] >= 0) {
            trace.cycle_entry = first_seen[static_cast<std::size_t>(current)];
            trace.cycle_length = static_cast<int>(trace.terms.size()) - trace.cycle_entry;
            break;
        }
        first_seen[static_cast<std::size_t>(current)] = static_cast<int>(trace.terms.size());
        trace.terms.push_back(current);
        trace.step_values.push_back(space.mixed(current, map.apply(current)));
        current = map.apply(current);
    }
    return trace;
}

NonExpansiveResult check_nonexpansive(const PartialNMetricSpace& space, const SelfMap& map,
                                      double tol) {
    NonExpansiveResult result;
    for_each_multiset(space.num_points(), space.arity(), [&](const MultisetKey& key) {
        if (!result.holds) return;
        MultisetKey image;
        image.reserve(key.size());
        for (int x : key) image.push_back(map.apply(x));
        double lhs = space.value_at(canonical_key(std::move(image)));
        double rhs = space.value_at(key);
        if (!leq(lhs, rhs, tol)) {
            result.holds = false;
            result.witness = key;
            result.lhs = lhs;
            result.rhs = rhs;
        }
    });
    return result;
}

namespace {

// z is a limit of the orbit tail iff G(<z>^{n-1}, c) = G(<z>^n) for every
// cycle point c (exact on finite spaces).
bool is_cycle_limit(const PartialNMetricSpace& space, const std::vector<int>& cycle, int z,
                    double tol) {
    double sd = space.self_distance(z);
    for (int c : cycle)
        if (!eq(space.mixed(z, c), sd, tol)) return false;
    return true;
}

}  // namespace

OrbitalContinuityVerdict check_orbital_continuity(const SelfMap& map, int x0, int z,
                                                  double tol) {
    const auto& space = map.space();
    if (z < 0 || z >= space.num_points()) throw UnknownPoint("z out of range");
    OrbitTrace trace = orbit(map, x0);
    auto cycle = trace.cycle_points();

    OrbitalContinuityVerdict verdict;
    verdict.antecedent = is_cycle_limit(space, cycle, z, tol);
    verdict.consequent = is_cycle_limit(space, cycle, map.apply(z), tol);
    verdict.holds = !verdict.antecedent || verdict.consequent;
    return verdict;
}

OrbitalContinuityVerdict check_orbital_continuity_all(const SelfMap& map, int x0, double tol) {
    OrbitalContinuityVerdict verdict;
    for (int z = 0; z < map.space().num_points(); ++z) {
        OrbitalContinuityVerdict one = check_orbital_continuity(map, x0, z, tol);
        if (!one.holds) return one;
    }
    return verdict;
}

ContractivityCertificate certify_r_contractive(const SelfMap& map, int x0, double r,
                                               int prefix_len, double tol) {
    const auto& space = map.space();
    OrbitTrace trace = orbit(map, x0);

    ContractivityCertificate cert;
    cert.kind = CertificateKind::r_contractive;
    cert.r = r;
    cert.holds_on_prefix = true;

    // A prefix covering entry-to-cycle plus one full cycle decides the
    // universally quantified definition exactly.
    int needed = trace.cycle_entry + trace.cycle_length + 1;
    int length = std::max(std::max(prefix_len, 2), needed);
    SequencePrefix seq = trace.prefix(space, length + 1);
    cert.prefix_length = length;

    auto fail = [&](const std::string& witness) {
        cert.holds_on_prefix = false;
        cert.failure_witness = witness;
    };

    for (int m = 0; m < length && cert.holds_on_prefix; ++m) {
        double sd = space.self_distance(seq.items[static_cast<std::size_t>(m)]);
        if (!leq(r, sd, tol))
            fail("lower bound fails at step " + std::to_string(m) + ": self-distance " +
                 std::to_string(sd) + " < r");
    }

    double g0 = space.mixed(seq.items[0], seq.items[1]);
    double g0_abs = std::abs(g0);
    if (cert.holds_on_prefix && !leq(g0, r + g0_abs, tol))
        fail("decay fails at step 0: " + std::to_string(g0) + " > r + |G0|");

    double c_estimate = 0.0;
    for (int m = 1; m < length && cert.holds_on_prefix; ++m) {
        double gm = space.mixed(seq.items[static_cast<std::size_t>(m)],
                                seq.items[static_cast<std::size_t>(m + 1)]);
        if (leq(gm, r, tol)) continue;
        // Steps inside the cycle recur at unbounded m, where no c < 1 can
        // absorb a persistent excess over r.
        if (m >= trace.cycle_entry) {
            fail("recurring step value " + std::to_string(gm) + " exceeds r at cycle step " +
                 std::to_string(m));
            break;
        }
        if (g0_abs <= tol) {
            fail("step value " + std::to_string(gm) + " exceeds r with G0 = 0");
            break;
        }
        c_estimate = std::max(c_estimate, std::pow((gm - r) / g0_abs, 1.0 / m));
    }
    if (cert.holds_on_prefix && c_estimate >= 1.0 - tol)
        fail("decay rate estimate " + std::to_string(c_estimate) + " not below 1");
    cert.c_estimate = cert.holds_on_prefix ? c_estimate : 0.0;
    return cert;
}

ContractivityCertificate certify_phi_contractive(const SelfMap& map, int x0, double r,
                                                 double lambda, int prefix_len, double tol) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw InvalidLambda("lambda must lie in (0, 1], got " + std::to_string(lambda));

    const auto& space = map.space();
    OrbitTrace trace = orbit(map, x0);

    ContractivityCertificate cert;
    cert.kind = CertificateKind::phi_r_contractive;
    cert.r = r;
    cert.c_estimate = lambda;
    cert.holds_on_prefix = true;

    int needed = trace.cycle_entry + trace.cycle_length;
    int length = std::max(std::max(prefix_len, 2), needed);
    SequencePrefix seq = trace.prefix(space, length + 1);
    cert.prefix_length = length;

    auto phi = [&](double t) { return lambda * (t - r); };

    for (int m1 = 0; m1 < length && cert.holds_on_prefix; ++m1) {
        double sd = space.self_distance(seq.items[static_cast<std::size_t>(m1)]);
        if (!leq(r, sd, tol)) {
            cert.holds_on_prefix = false;
            cert.failure_witness =
                "lower bound fails at step " + std::to_string(m1) + ": self-distance below r";
            break;
        }
        for (int m2 = 0; m2 < length; ++m2) {
            int u = seq.items[static_cast<std::size_t>(m1)];
            int v = seq.items[static_cast<std::size_t>(m2)];
            double gm = space.mixed(u, v);
            double next = space.mixed(map.apply(u), map.apply(v));
            if (!leq(next, gm - phi(gm), tol)) {
                cert.holds_on_prefix = false;
                std::ostringstream out;
                out << "contraction fails at pair (" << m1 << "," << m2 << "): " << next << " > "
                    << gm << " - phi(" << gm << ")";
                cert.failure_witness = out.str();
                break;
            }
        }
    }
    return cert;
}

OrbitalCompletenessResult check_orbital_completeness(const PartialNMetricSpace& space,
                                                     const SelfMap& map, double tol) {
    OrbitalCompletenessResult result;
    for (int x0 = 0; x0 < space.num_points(); ++x0) {
        OrbitTrace trace = orbit(map, x0);
        auto cycle = trace.cycle_points();
        CycleCauchyVerdict cauchy = cycle_cauchy(space, cycle, tol);
        if (!cauchy.cauchy) continue;
        if (!cycle_special_limit(space, cycle, tol)) {
            result.complete = false;
            result.witnesses.push_back(space.point_name(x0));
        }
    }
    return result;
}

std::string solve_status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::fixed_point: return "fixed_point";
        case SolveStatus::not_cauchy: return "NotCauchy";
        case SolveStatus::no_special_limit: return "NoSpecialLimit";
        case SolveStatus::hypotheses_unsatisfied: return "HypothesesUnsatisfied";
    }
    return "?";
}

FixedPointResult solve_fixed_point(const PartialNMetricSpace& space, const SelfMap& map,
                                   int x0, const SolveConfig& config) {
    double tol = config.tol;
    int max_steps = config.max_steps > 0 ? config.max_steps : 10 * space.num_points();
    max_steps = std::max(max_steps, space.num_points() + 1);  // cycle always closes by then

    FixedPointResult result;
    OrbitTrace trace = orbit(map, x0, max_steps);
    if (!trace.cycle_found()) {
        result.status = SolveStatus::not_cauchy;
        result.diagnostic = "orbit did not close within max_steps";
        return result;
    }

    auto cycle = trace.cycle_points();
    CycleCauchyVerdict cauchy = cycle_cauchy(space, cycle, tol);
    if (!cauchy.cauchy) {
        result.status = SolveStatus::not_cauchy;
        std::ostringstream out;
        out << "pairwise G-values over the orbit cycle do not coincide:";
        std::set<double> values;
        for (int u : cycle)
            for (int v : cycle) values.insert(space.mixed(u, v));
        for (double v : values) out << " " << v;
        result.diagnostic = out.str();
        return result;
    }

    std::optional<int> a = cycle_special_limit(space, cycle, tol);
    if (!a) {
        result.status = SolveStatus::no_special_limit;
        result.diagnostic = "orbit is Cauchy but the space is not orbitally complete for it";
        return result;
    }

    NonExpansiveResult nonexp = check_nonexpansive(space, map, tol);
    OrbitalContinuityVerdict orbcont = check_orbital_continuity(map, x0, *a, tol);
    int fa = map.apply(*a);
    bool bounded_by_fa = check_lower_bound(space, space.self_distance(fa), tol).empty();
    bool bounded_by_a = check_lower_bound(space, space.self_distance(*a), tol).empty();

    auto log_case = [&](std::string name, bool satisfied, std::string detail) {
        result.case_log.push_back({std::move(name), satisfied, std::move(detail)});
    };

    bool uses_nonexp = false, uses_orbcont = false;
    if (config.strong_mode) {
        log_case("Thm2.8/non-expansive", nonexp.holds,
                 nonexp.holds ? "" : "non-expansiveness fails");
        log_case("Thm2.8/orbital-continuity", orbcont.holds,
                 orbcont.holds ? "" : "orbital continuity at x0 for a fails");
    } else {
        log_case("Thm2.7/non-expansive+orbital-continuity", nonexp.holds && orbcont.holds, "");
        log_case("Thm2.7/orbital-continuity+lower-bound(fa)", orbcont.holds && bounded_by_fa, "");
        log_case("Thm2.7/non-expansive+lower-bound(a)", nonexp.holds && bounded_by_a, "");
    }

    for (const auto& entry : result.case_log) {
        if (entry.satisfied) {
            result.theorem_case = entry.name;
            uses_nonexp = entry.name.find("non-expansive") != std::string::npos;
            uses_orbcont = entry.name.find("orbital-continuity") != std::string::npos;
            break;
        }
    }
    if (result.theorem_case.empty()) {
        result.status = SolveStatus::hypotheses_unsatisfied;
        std::ostringstream out;
        out << "no hypothesis case holds;";
        if (!nonexp.holds) out << " non-expansive fails;";
        if (!orbcont.holds) out << " orbital continuity at x0 for a fails;";
        if (!bounded_by_fa) out << " self-distances not bounded below by G(<fa>^n);";
        if (!bounded_by_a) out << " self-distances not bounded below by G(<a>^n);";
        result.diagnostic = out.str();
        return result;
    }

    if (map.apply(*a) != *a)
        throw TheoremContradicted("hypotheses hold but " + space.point_name(*a) +
                                  " is not fixed: implementation or validation bug");

    // Post-hoc consistency with the two supporting lemmas.
    if (uses_nonexp &&
        !eq(space.mixed(*a, map.apply(*a)), space.self_distance(*a), tol))
        throw TheoremContradicted("non-expansive case fired but G(<a>^{n-1}, fa) != G(<a>^n)");
    if (uses_orbcont &&
        !eq(space.mixed(map.apply(*a), *a), space.self_distance(map.apply(*a)), tol))
        throw TheoremContradicted("orbital-continuity case fired but G(<fa>^{n-1}, a) != G(<fa>^n)");

    result.status = SolveStatus::fixed_point;
    result.fixed_point = *a;
    result.self_distance_at_fp = space.self_distance(*a);
    auto it = std::find(trace.terms.begin(), trace.terms.end(), *a);
    result.iterations = it == trace.terms.end() ? static_cast<int>(trace.terms.size())
                                                : static_cast<int>(it - trace.terms.begin());
    return result;
}

ContractiveSolveResult solve_via_contractive(const PartialNMetricSpace& space,
                                             const SelfMap& map, int x0,
                                             const CertificateRequest& request,
                                             const SolveConfig& config) {
    ContractiveSolveResult out;
    out.certificate =
        request.kind == CertificateKind::r_contractive
            ? certify_r_contractive(map, x0, request.r, 2, config.tol)
            : certify_phi_contractive(map, x0, request.r, request.lambda, 2, config.tol);

    if (!out.certificate.holds_on_prefix) {
        out.certificate_failed = true;
        out.result.status = SolveStatus::hypotheses_unsatisfied;
        out.result.diagnostic = "certificate failed: " + out.certificate.failure_witness;
        return out;
    }

    out.result = solve_fixed_point(space, map, x0, config);
    out.result.certificate = out.certificate;
    if (out.result.status != SolveStatus::fixed_point) return out;

    // Corollary hypothesis sets use the universal orbital-continuity variant.
    NonExpansiveResult nonexp = check_nonexpansive(space, map, config.tol);
    bool orbcont_all = check_orbital_continuity_all(map, x0, config.tol).holds;
    bool bounded_by_r = check_lower_bound(space, request.r, config.tol).empty();

    std::string base = request.kind == CertificateKind::r_contractive
                           ? (config.strong_mode ? "Cor6.5" : "Cor6.4")
                           : (config.strong_mode ? "Cor7.4" : "Cor7.3");
    std::optional<std::string> corollary;
    if (config.strong_mode) {
        if (nonexp.holds) corollary = base + "/non-expansive";
        else if (orbcont_all) corollary = base + "/orbital-continuity";
    } else {
        if (nonexp.holds && orbcont_all) corollary = base + "/non-expansive+orbital-continuity";
        else if (nonexp.holds && bounded_by_r) corollary = base + "/non-expansive+lower-bound(r)";
    }

    if (corollary) {
        out.result.corollary_case = corollary;
        if (!eq(out.result.self_distance_at_fp, request.r, config.tol))
            throw TheoremContradicted("corollary hypotheses hold but G(<a>^n) != r");
    }
    return out;
}

}  // namespace pnmetric
