#include "pnmetric/axioms.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "pnmetric/errors.hpp"
#include "pnmetric/tolerance.hpp"

namespace pnmetric {

namespace {

std::string describe(const PartialNMetricSpace& space, const MultisetKey& key) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (i) out << ",";
        out << space.point_name(key[i]);
    }
    out << "}";
    return out.str();
}

}  // namespace

std::string axiom_name(Axiom a) {
    switch (a) {
        case Axiom::sep: return "sep";
        case Axiom::sep_prime: return "sep'";
        case Axiom::ssd: return "ssd";
        case Axiom::sssd: return "sssd";
        case Axiom::sym: return "sym";
        case Axiom::ptri: return "ptri";
        case Axiom::lower_bound: return "lower_bound";
    }
    return "?";
}

std::string profile_name(Profile p) {
    switch (p) {
        case Profile::partial_n_metric: return "partial_n_metric";
        case Profile::strong: return "strong";
        case Profile::n_metric: return "n_metric";
    }
    return "?";
}

Profile profile_from_name(const std::string& name) {
    if (name == "partial_n_metric") return Profile::partial_n_metric;
    if (name == "strong") return Profile::strong;
    if (name == "n_metric") return Profile::n_metric;
    throw SchemaError("unknown profile: " + name);
}

std::vector<Violation> check_ssd(const PartialNMetricSpace& space, double tol) {
    std::vector<Violation> violations;
    int p = space.num_points(), n = space.arity();
    for (int x = 0; x < p; ++x) {
        double sd = space.self_distance(x);
        for (int y = 0; y < p; ++y) {
            double m = space.mixed(x, y);
            if (!leq(sd, m, tol)) {
                violations.push_back({Axiom::ssd,
                                      "(" + space.point_name(x) + "," + space.point_name(y) + ")",
                                      {constant_key(x, n), mixed_key(x, y, n)},
                                      sd, m});
            }
        }
    }
    return violations;
}

std::vector<Violation> check_sep(const PartialNMetricSpace& space, double tol) {
    std::vector<Violation> violations;
    int p = space.num_points(), n = space.arity();
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            if (x >= y) continue;  // the condition is symmetric in (x, y)
            bool xy = eq(space.mixed(x, y), space.self_distance(x), tol);
            bool yx = eq(space.mixed(y, x), space.self_distance(y), tol);
            if (xy && yx) {
                violations.push_back({Axiom::sep,
                                      "indistinguishable pair (" + space.point_name(x) + "," +
                                          space.point_name(y) + ")",
                                      {mixed_key(x, y, n), mixed_key(y, x, n)},
                                      space.mixed(x, y), space.mixed(y, x)});
            }
        }
    }
    return violations;
}

std::vector<Violation> check_sep_prime(const PartialNMetricSpace& space, double tol) {
    std::vector<Violation> violations;
    int p = space.num_points(), n = space.arity();
    for (int x = 0; x < p; ++x) {
        for (int y = x + 1; y < p; ++y) {
            double lo = 0.0, hi = 0.0;
            std::vector<MultisetKey> chain;
            for (int k = 0; k <= n; ++k) {
                MultisetKey key(static_cast<std::size_t>(n), x);
                std::fill(key.end() - k, key.end(), y);
                key = canonical_key(std::move(key));
                double v = space.value_at(key);
                if (k == 0) lo = hi = v;
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                chain.push_back(std::move(key));
            }
            if (hi - lo <= tol) {
                violations.push_back({Axiom::sep_prime,
                                      "constant mixing chain between " + space.point_name(x) +
                                          " and " + space.point_name(y),
                                      std::move(chain), lo, hi});
            }
        }
    }
    return violations;
}

std::vector<Violation> check_sssd(const PartialNMetricSpace& space, double tol) {
    std::vector<Violation> violations;
    int p = space.num_points(), n = space.arity();
    for (int x = 0; x < p; ++x) {
        double sd = space.self_distance(x);
        for (int y = 0; y < p; ++y) {
            if (x == y) continue;
            double m = space.mixed(x, y);
            if (!strictly_less(sd, m, tol)) {
                violations.push_back({Axiom::sssd,
                                      "(" + space.point_name(x) + "," + space.point_name(y) + ")",
                                      {constant_key(x, n), mixed_key(x, y, n)},
                                      sd, m});
            }
        }
    }
    return violations;
}

std::vector<Violation> check_ptri(const PartialNMetricSpace& space, double tol) {
    std::vector<Violation> violations;
    int p = space.num_points(), n = space.arity();
    for_each_multiset(p, n, [&](const MultisetKey& key) {
        double lhs = space.value_at(key);
        int prev = -1;
        for (std::size_t pos = 0; pos < key.size(); ++pos) {
            int xn = key[pos];
            if (xn == prev) continue;  // distinct distinguished values only
            prev = xn;
            MultisetKey prefix = key;
            prefix.erase(prefix.begin() + static_cast<std::ptrdiff_t>(pos));
            for (int y = 0; y < p; ++y) {
                MultisetKey with_y = prefix;
                with_y.push_back(y);
                double rhs = space.value_at(canonical_key(std::move(with_y))) +
                             space.mixed(y, xn) - space.self_distance(y);
                if (!leq(lhs, rhs, tol)) {
                    violations.push_back(
                        {Axiom::ptri,
                         "multiset " + describe(space, key) + " distinguishing " +
                             space.point_name(xn) + " via " + space.point_name(y),
                         {key, mixed_key(y, xn, n)},
                         lhs, rhs});
                }
            }
        }
    });
    return violations;
}

std::vector<Violation> check_lower_bound(const PartialNMetricSpace& space, double r,
                                         double tol) {
    std::vector<Violation> violations;
    int n = space.arity();
    for (int x = 0; x < space.num_points(); ++x) {
        double sd = space.self_distance(x);
        if (!leq(r, sd, tol)) {
            violations.push_back({Axiom::lower_bound,
                                  "self-distance of " + space.point_name(x) + " below bound",
                                  {constant_key(x, n)},
                                  r, sd});
        }
    }
    return violations;
}

std::vector<Violation> check_symmetry_sampled(const Evaluator& evaluator, int num_points,
                                              int n, int samples, std::uint64_t seed,
                                              double tol) {
    std::vector<Violation> violations;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, num_points - 1);
    for (int s = 0; s < samples; ++s) {
        std::vector<int> tuple(static_cast<std::size_t>(n));
        for (int& t : tuple) t = pick(rng);
        std::vector<int> permuted = tuple;
        std::shuffle(permuted.begin(), permuted.end(), rng);
        double a, b;
        try {
            a = evaluator(tuple);
            b = evaluator(permuted);
        } catch (const std::exception& e) {
            throw EvaluatorFailure(std::string("evaluator failed on sampled tuple: ") + e.what());
        }
        if (!eq(a, b, tol)) {
            violations.push_back({Axiom::sym, "sample #" + std::to_string(s),
                                  {tuple, permuted}, a, b});
            break;
        }
    }
    return violations;
}

ValidationReport validate(const PartialNMetricSpace& space, Profile profile,
                          const CheckOptions& options) {
    ValidationReport report;
    report.profile = profile;
    report.tolerance = options.tol;

    int p = space.num_points();
    auto pairs = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p);

    std::vector<Violation> all;
    auto collect = [&](std::vector<Violation> vs) {
        all.insert(all.end(), std::make_move_iterator(vs.begin()),
                   std::make_move_iterator(vs.end()));
    };

    std::uint64_t ptri_instances = 0;
    for_each_multiset(p, space.arity(), [&](const MultisetKey& key) {
        int distinct = 1;
        for (std::size_t i = 1; i < key.size(); ++i)
            if (key[i] != key[i - 1]) ++distinct;
        ptri_instances += static_cast<std::uint64_t>(distinct) * static_cast<std::uint64_t>(p);
    });

    switch (profile) {
        case Profile::partial_n_metric:
            collect(check_sep(space, options.tol));
            collect(check_ssd(space, options.tol));
            collect(check_ptri(space, options.tol));
            report.counts["sep"] = pairs;
            report.counts["ssd"] = pairs;
            report.counts["ptri"] = ptri_instances;
            break;
        case Profile::strong:
            collect(check_sssd(space, options.tol));
            collect(check_ptri(space, options.tol));
            report.counts["sssd"] = static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(p - 1);
            report.counts["ptri"] = ptri_instances;
            break;
        case Profile::n_metric:
            collect(check_sep(space, options.tol));
            collect(check_ssd(space, options.tol));
            collect(check_ptri(space, options.tol));
            report.counts["sep"] = pairs;
            report.counts["ssd"] = pairs;
            report.counts["ptri"] = ptri_instances;
            // All self-distances must equal zero.
            for (int x = 0; x < p; ++x) {
                double sd = space.self_distance(x);
                if (!eq(sd, 0.0, options.tol)) {
                    all.push_back({Axiom::lower_bound,
                                   "nonzero self-distance at " + space.point_name(x),
                                   {constant_key(x, space.arity())},
                                   0.0, sd});
                }
            }
            report.counts["self_distance_zero"] = static_cast<std::uint64_t>(p);
            break;
    }

    report.total_violations = all.size();
    report.pass = all.empty();
    if (all.size() > options.violation_cap) all.resize(options.violation_cap);
    report.violations = std::move(all);

    switch (profile) {
        case Profile::partial_n_metric:
            space.flags.partial_n_metric = report.pass;
            break;
        case Profile::strong:
            space.flags.strong = report.pass;
            if (report.pass) space.flags.partial_n_metric = true;  // strong implies partial
            break;
        case Profile::n_metric:
            space.flags.n_metric = report.pass;
            if (report.pass) space.flags.partial_n_metric = true;
            break;
    }
    return report;
}

}  // namespace pnmetric
