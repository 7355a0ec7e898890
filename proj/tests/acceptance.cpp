// End-to-end acceptance run: one pass/fail line per criterion, exit code 1
// when any criterion fails. All tolerances are pinned at 1e-9.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "pnmetric/axioms.hpp"
#include "pnmetric/errors.hpp"
#include "pnmetric/fixed_point.hpp"
#include "pnmetric/io.hpp"
#include "pnmetric/sequence.hpp"
#include "pnmetric/space.hpp"
#include "pnmetric/topology.hpp"
#include "support/corpus.hpp"

#ifndef PNMETRIC_DATA_DIR
#define PNMETRIC_DATA_DIR "data"
#endif

using namespace pnmetric;
using namespace pnmetric::testsupport;

namespace {

constexpr double kTol = 1e-9;

std::string g_detail;

void detail(const std::string& message) {
    if (g_detail.empty()) g_detail = message;
}

PartialNMetricSpace load_reference_space() {
    return io::load_space(std::string(PNMETRIC_DATA_DIR) + "/two_point_5metric.json");
}

// Shared exhaustive corpus for criteria 6, 7 and 9: validated spaces with
// three points at arity three, every self-map, every start point.
struct MapCase {
    const PartialNMetricSpace* space;
    bool strong;
    SelfMap map;
    int x0;
};

void for_each_map_case(const std::vector<PartialNMetricSpace>& spaces,
                       const std::vector<bool>& strong,
                       const std::function<void(const MapCase&)>& visit) {
    for (std::size_t s = 0; s < spaces.size(); ++s) {
        const auto& space = spaces[s];
        int p = space.num_points();
        std::vector<int> image(static_cast<std::size_t>(p), 0);
        int total = 1;
        for (int i = 0; i < p; ++i) total *= p;
        for (int code = 0; code < total; ++code) {
            int c = code;
            for (int i = 0; i < p; ++i) {
                image[static_cast<std::size_t>(i)] = c % p;
                c /= p;
            }
            SelfMap map = SelfMap::from_indices(space, image);
            for (int x0 = 0; x0 < p; ++x0) visit({&space, strong[s], map, x0});
        }
    }
}

bool criterion1_reference_table() {
    PartialNMetricSpace space = load_reference_space();
    for (Profile profile : {Profile::partial_n_metric, Profile::strong, Profile::n_metric}) {
        ValidationReport report = validate(space, profile, {kTol});
        if (!report.pass || report.total_violations != 0) {
            detail("profile " + profile_name(profile) + " failed");
            return false;
        }
    }
    if (space.eval({"b", "b", "a", "a", "a"}) != -1.0) {
        detail("negative table value not preserved by load/eval");
        return false;
    }
    PartialNMetricSpace round = io::space_from_json(io::space_to_json(space));
    if (round.eval({"b", "b", "a", "a", "a"}) != -1.0) {
        detail("negative table value not preserved by serialization");
        return false;
    }
    return true;
}

bool criterion2_construction() {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        PartialMetricSpace pm = random_partial_metric(rng, 5);
        for (int x = 0; x < pm.num_points(); ++x)
            for (int y = x; y < pm.num_points(); ++y)
                if (pm.at(x, y) < 0.0 || pm.at(x, y) > 10.0) {
                    detail("generator left [0, 10]");
                    return false;
                }
        bool strong = pm.is_strong(kTol);
        for (int n = 2; n <= 4; ++n) {
            PartialNMetricSpace space = from_partial_metric(pm, n);
            if (!validate(space, Profile::partial_n_metric, {kTol}).pass) {
                detail("partial profile failed at trial " + std::to_string(trial));
                return false;
            }
            if (strong && !validate(space, Profile::strong, {kTol}).pass) {
                detail("strong source lost strength at trial " + std::to_string(trial));
                return false;
            }
        }
    }
    return true;
}

bool criterion3_associated_metric() {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        PartialMetricSpace pm = random_partial_metric(rng, 5);
        for (int n = 2; n <= 4; ++n) {
            PartialNMetricSpace space = from_partial_metric(pm, n);
            validate(space, Profile::partial_n_metric, {kTol});
            MetricSpace metric = associated_metric(space);
            if (auto violation = metric.first_axiom_violation(kTol)) {
                detail("metric axiom failed: " + *violation);
                return false;
            }
        }
    }
    PartialNMetricSpace ref = load_reference_space();
    validate(ref, Profile::partial_n_metric, {kTol});
    MetricSpace metric = associated_metric(ref);
    double d = metric.at(ref.point_index("a"), ref.point_index("b"));
    if (d != 7.0) {
        detail("reference associated distance is " + std::to_string(d) + ", expected 7");
        return false;
    }
    return true;
}

bool criterion4_inequalities_and_separation_chain() {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        PartialNMetricSpace space = random_validated_space(rng, 4, 3);
        OracleReport report = verify_basic_inequalities(space, true, 0, 42, kTol);
        if (!report.pass) {
            detail("inequality failed: " + report.counterexamples.front());
            return false;
        }
        if (check_sep(space, kTol).empty() != check_sep_prime(space, kTol).empty()) {
            detail("separation-chain equivalence failed on a valid table");
            return false;
        }
    }
    for (int trial = 0; trial < 50; ++trial) {
        PartialNMetricSpace bad = trial % 2 == 0 ? degenerate_table(3, 3, 0.5 * trial)
                                                 : perturbed_invalid_table(rng, 3, 3);
        if (check_sep(bad, kTol).empty() != check_sep_prime(bad, kTol).empty()) {
            detail("separation-chain equivalence failed on an invalid table");
            return false;
        }
    }
    return true;
}

bool criterion5_topology() {
    std::mt19937_64 rng(42);
    std::vector<PartialNMetricSpace> spaces;
    std::vector<bool> strong_flags;
    for (int trial = 0; trial < 60; ++trial) {
        PartialMetricSpace pm = random_partial_metric(rng, 5);
        PartialNMetricSpace space = from_partial_metric(pm, 3);
        validate(space, Profile::partial_n_metric, {kTol});
        strong_flags.push_back(validate(space, Profile::strong, {kTol}).pass);
        spaces.push_back(std::move(space));
    }
    spaces.push_back(load_reference_space());
    validate(spaces.back(), Profile::partial_n_metric, {kTol});
    strong_flags.push_back(true);

    for (std::size_t i = 0; i < spaces.size(); ++i) {
        SeparationClass cls = separation_class(spaces[i]);
        if (!cls.is_T0) {
            detail("validated space not T0: " + cls.t0_witnesses.front());
            return false;
        }
        if (strong_flags[i] && !cls.is_T1) {
            detail("strong space not T1: " + cls.t1_witnesses.front());
            return false;
        }
        BasisCheckResult basis = basis_check(spaces[i], 1000, 42);
        if (!basis.pass) {
            detail("basis property failed: " + basis.counterexample);
            return false;
        }
    }
    for (int trial = 0; trial < 30; ++trial) {
        PartialNMetricSpace space = from_partial_metric(random_metric(rng, 4), 3);
        if (!validate(space, Profile::n_metric, {kTol}).pass) {
            detail("n-metric instance failed validation");
            return false;
        }
        TopologyComparison cmp = compare_topologies(space);
        if (!cmp.pass) {
            detail(cmp.counterexample);
            return false;
        }
    }
    return true;
}

std::vector<PartialNMetricSpace> exhaustive_corpus(std::vector<bool>& strong_flags) {
    std::mt19937_64 rng(42);
    std::vector<PartialNMetricSpace> spaces;
    for (int trial = 0; trial < 50; ++trial) {
        PartialMetricSpace pm =
            trial % 5 == 4 ? random_metric(rng, 3) : random_strong_partial_metric(rng, 3);
        PartialNMetricSpace space = from_partial_metric(pm, 3);
        validate(space, Profile::partial_n_metric, {kTol});
        strong_flags.push_back(validate(space, Profile::strong, {kTol}).pass);
        spaces.push_back(std::move(space));
    }
    return spaces;
}

bool criterion6_engine_soundness() {
    std::vector<bool> strong_flags;
    std::vector<PartialNMetricSpace> spaces = exhaustive_corpus(strong_flags);
    long cases = 0, fixed = 0;
    bool ok = true;
    for_each_map_case(spaces, strong_flags, [&](const MapCase& mc) {
        if (!ok) return;
        ++cases;
        SolveConfig config;
        config.tol = kTol;
        config.strong_mode = mc.strong;
        try {
            FixedPointResult result = solve_fixed_point(*mc.space, mc.map, mc.x0, config);
            if (result.status == SolveStatus::fixed_point) {
                ++fixed;
                if (mc.map.apply(*result.fixed_point) != *result.fixed_point) {
                    detail("claimed fixed point is not fixed");
                    ok = false;
                }
            }
        } catch (const TheoremContradicted& e) {
            detail(std::string("theorem contradicted: ") + e.what());
            ok = false;
        }
    });
    if (ok && (cases < 50 * 27 * 3 || fixed == 0)) {
        detail("corpus too small or no fixed points exercised");
        ok = false;
    }
    return ok;
}

bool criterion7_certificates() {
    std::vector<bool> strong_flags;
    std::vector<PartialNMetricSpace> spaces = exhaustive_corpus(strong_flags);
    long held = 0, corollaries = 0;
    bool ok = true;
    for_each_map_case(spaces, strong_flags, [&](const MapCase& mc) {
        if (!ok) return;
        const auto& space = *mc.space;
        OrbitTrace trace = orbit(mc.map, mc.x0);
        CycleCauchyVerdict exact = cycle_cauchy(space, trace.cycle_points(), kTol);

        std::vector<double> r_candidates = {0.0};
        if (exact.cauchy) r_candidates.push_back(exact.r);

        std::vector<CertificateRequest> requests;
        for (double r : r_candidates) {
            requests.push_back({CertificateKind::r_contractive, r, 0.5});
            for (double lambda : {0.25, 0.5, 1.0})
                requests.push_back({CertificateKind::phi_r_contractive, r, lambda});
        }

        SolveConfig config;
        config.tol = kTol;
        config.strong_mode = mc.strong;
        for (const auto& request : requests) {
            try {
                ContractiveSolveResult out =
                    solve_via_contractive(space, mc.map, mc.x0, request, config);
                if (!out.certificate.holds_on_prefix) continue;
                ++held;
                if (!exact.cauchy || std::abs(exact.r - request.r) > kTol) {
                    detail("certificate held but exact Cauchy value disagrees with r");
                    ok = false;
                    return;
                }
                if (out.result.corollary_case) {
                    ++corollaries;
                    if (std::abs(out.result.self_distance_at_fp - request.r) > kTol) {
                        detail("corollary held but self-distance at the fixed point differs from r");
                        ok = false;
                        return;
                    }
                }
            } catch (const TheoremContradicted& e) {
                detail(std::string("theorem contradicted: ") + e.what());
                ok = false;
                return;
            }
        }
    });
    if (ok && (held == 0 || corollaries == 0)) {
        detail("no certificate or corollary case was exercised");
        ok = false;
    }
    return ok;
}

std::string scenario_bytes() {
    PartialNMetricSpace space = load_reference_space();
    validate(space, Profile::strong, {kTol});
    SelfMap collapse = io::load_map(space, std::string(PNMETRIC_DATA_DIR) + "/map_collapse.json");
    SelfMap swap = io::load_map(space, std::string(PNMETRIC_DATA_DIR) + "/map_swap.json");
    int a = space.point_index("a");

    io::json doc;
    NonExpansiveResult nonexp = check_nonexpansive(space, collapse, kTol);
    io::json witness = io::json::array();
    for (int i : nonexp.witness) witness.push_back(space.point_name(i));
    doc["nonexpansive"] = {{"holds", nonexp.holds}, {"witness", witness}};

    SolveConfig config;
    config.tol = kTol;
    config.strong_mode = true;
    doc["solve_collapse"] = io::result_to_json(space, solve_fixed_point(space, collapse, a, config));
    doc["solve_swap"] = io::result_to_json(space, solve_fixed_point(space, swap, a, config));
    return io::stable_dump(doc);
}

bool criterion8_worked_scenario() {
    std::string first = scenario_bytes();
    std::string second = scenario_bytes();
    if (first != second) {
        detail("scenario output is not byte-stable across runs");
        return false;
    }
    io::json doc = io::json::parse(first);
    if (doc["nonexpansive"]["holds"] != false ||
        doc["nonexpansive"]["witness"] != io::json::array({"a", "a", "a", "b", "b"})) {
        detail("non-expansiveness witness mismatch");
        return false;
    }
    if (doc["solve_collapse"]["status"] != "fixed_point" ||
        doc["solve_collapse"]["fixed_point"] != "b" ||
        doc["solve_collapse"]["theorem_case"] != "Thm2.8/orbital-continuity") {
        detail("collapse scenario mismatch");
        return false;
    }
    if (doc["solve_swap"]["status"] != "NotCauchy") {
        detail("two-cycle scenario did not report NotCauchy");
        return false;
    }
    return true;
}

bool criterion9_special_limit_uniqueness() {
    std::vector<bool> strong_flags;
    std::vector<PartialNMetricSpace> spaces = exhaustive_corpus(strong_flags);
    long searched = 0;
    bool ok = true;
    for_each_map_case(spaces, strong_flags, [&](const MapCase& mc) {
        if (!ok) return;
        OrbitTrace trace = orbit(mc.map, mc.x0);
        SequencePrefix prefix = trace.prefix(*mc.space, 12);
        if (!estimate_cauchy(prefix, -1, kTol).holds_on_prefix) return;
        try {
            special_limit_search(prefix, kTol);
            ++searched;
        } catch (const UniquenessViolation& e) {
            detail(std::string("uniqueness violated: ") + e.what());
            ok = false;
        }
        try {
            cycle_special_limit(*mc.space, trace.cycle_points(), kTol);
        } catch (const UniquenessViolation& e) {
            detail(std::string("uniqueness violated on cycle: ") + e.what());
            ok = false;
        }
    });
    if (ok && searched == 0) {
        detail("no Cauchy orbit was searched");
        ok = false;
    }
    return ok;
}

}  // namespace

int main() {
    struct Item {
        const char* name;
        bool (*run)();
    };
    const Item items[] = {
        {"criterion 1: reference table validates under all profiles", criterion1_reference_table},
        {"criterion 2: construction output validates", criterion2_construction},
        {"criterion 3: associated metric satisfies the metric axioms", criterion3_associated_metric},
        {"criterion 4: basic inequalities and separation-chain equivalence", criterion4_inequalities_and_separation_chain},
        {"criterion 5: separation classes, basis property, ball comparison", criterion5_topology},
        {"criterion 6: solver soundness over the exhaustive map corpus", criterion6_engine_soundness},
        {"criterion 7: certificates imply the exact Cauchy value", criterion7_certificates},
        {"criterion 8: worked scenario is correct and byte-stable", criterion8_worked_scenario},
        {"criterion 9: special limits are unique", criterion9_special_limit_uniqueness},
    };

    int failures = 0;
    for (const Item& item : items) {
        g_detail.clear();
        bool pass = false;
        try {
            pass = item.run();
        } catch (const std::exception& e) {
            detail(std::string("exception: ") + e.what());
        }
        if (pass) {
            std::cout << "PASS " << item.name << "\n";
        } else {
            ++failures;
            std::cout << "FAIL " << item.name;
            if (!g_detail.empty()) std::cout << " (" << g_detail << ")";
            std::cout << "\n";
        }
    }
    return failures == 0 ? 0 : 1;
}
