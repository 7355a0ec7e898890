#include "pnmetric/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pnmetric/errors.hpp"
#include "pnmetric/tolerance.hpp"

namespace pnmetric {

namespace {

int resolve_window(const SequencePrefix& prefix, int window) {
    if (window < 0) return prefix.default_window();
    if (window == 0 || window > prefix.length())
        throw WindowTooLarge("window " + std::to_string(window) + " on a prefix of length " +
                             std::to_string(prefix.length()));
    return window;
}

std::string name(const PartialNMetricSpace& space, int i) { return space.point_name(i); }

}  // namespace

SequencePrefix SequencePrefix::from_names(const PartialNMetricSpace& space,
                                          const std::vector<std::string>& names) {
    SequencePrefix prefix;
    prefix.space = &space;
    prefix.items.reserve(names.size());
    for (const auto& n : names) prefix.items.push_back(space.point_index(n));
    if (prefix.items.empty()) throw SchemaError("sequence prefix must be nonempty");
    return prefix;
}

int SequencePrefix::default_window() const {
    return std::min(length(), std::max(4, length() / 4));
}

CauchyVerdict estimate_cauchy(const SequencePrefix& prefix, int window, double tol) {
    const auto& space = *prefix.space;
    int w = resolve_window(prefix, window);
    int start = prefix.length() - w;

    CauchyVerdict verdict;
    verdict.window = w;
    verdict.tolerance = tol;

    double sum = 0.0;
    for (int m1 = start; m1 < prefix.length(); ++m1)
        for (int m2 = start; m2 < prefix.length(); ++m2)
            sum += space.mixed(prefix.items[m1], prefix.items[m2]);
    double r = sum / (static_cast<double>(w) * w);

    double residual = 0.0;
    for (int m1 = start; m1 < prefix.length(); ++m1)
        for (int m2 = start; m2 < prefix.length(); ++m2)
            residual = std::max(residual,
                                std::abs(space.mixed(prefix.items[m1], prefix.items[m2]) - r));

    verdict.r_estimate = r;
    verdict.residual = residual;
    verdict.holds_on_prefix = residual <= tol;
    return verdict;
}

bool check_limit(const SequencePrefix& prefix, int a, double tol, int window) {
    const auto& space = *prefix.space;
    if (a < 0 || a >= space.num_points()) throw UnknownPoint("limit candidate out of range");
    int w = resolve_window(prefix, window);
    double sd = space.self_distance(a);
    for (int m = prefix.length() - w; m < prefix.length(); ++m)
        if (!eq(space.mixed(a, prefix.items[m]), sd, tol)) return false;
    return true;
}

bool check_special_limit(const SequencePrefix& prefix, int a, double tol, int window) {
    const auto& space = *prefix.space;
    CauchyVerdict cauchy = estimate_cauchy(prefix, window, tol);
    if (!cauchy.holds_on_prefix)
        throw NotCauchyOnPrefix("prefix fails the pairwise Cauchy criterion (residual " +
                                std::to_string(cauchy.residual) + ")");
    if (!check_limit(prefix, a, tol, window)) return false;
    int w = resolve_window(prefix, window);
    for (int m = prefix.length() - w; m < prefix.length(); ++m) {
        int xm = prefix.items[m];
        if (!eq(space.mixed(xm, a) - space.self_distance(xm), 0.0, tol)) return false;
    }
    return true;
}

std::optional<int> special_limit_search(const SequencePrefix& prefix, double tol, int window) {
    const auto& space = *prefix.space;
    std::optional<int> found;
    for (int a = 0; a < space.num_points(); ++a) {
        if (check_special_limit(prefix, a, tol, window)) {
            if (found)
                throw UniquenessViolation("two distinct special limits on prefix: " +
                                          name(space, *found) + " and " + name(space, a) +
                                          " (invalid space or tolerance too loose)");
            found = a;
        }
    }
    return found;
}

OracleReport verify_basic_inequalities(const PartialNMetricSpace& space, bool exhaustive,
                                       int samples, std::uint64_t seed, double tol) {
    OracleReport report;
    int p = space.num_points();
    int n = space.arity();

    auto fail = [&](const std::string& part, const std::string& detail, double lhs, double rhs) {
        report.pass = false;
        std::ostringstream out;
        out << part << " fails: " << detail << " (lhs " << lhs << " > rhs " << rhs << ")";
        report.counterexamples.push_back(out.str());
    };

    // Parts (a)/(b): substitution of the first k coordinates, correcting by
    // the mixed-minus-self gaps of each swapped pair. (b) is the k = n case.
    auto check_substitution = [&](int k, const std::vector<int>& xs, const std::vector<int>& ys,
                                  const std::vector<int>& zs) {
        MultisetKey left(xs.begin(), xs.end());
        left.insert(left.end(), zs.begin(), zs.end());
        MultisetKey right(ys.begin(), ys.end());
        right.insert(right.end(), zs.begin(), zs.end());
        double lhs = space.value_at(canonical_key(std::move(left)));
        double rhs = space.value_at(canonical_key(std::move(right)));
        for (int j = 0; j < k; ++j)
            rhs += space.mixed(ys[j], xs[j]) - space.self_distance(ys[j]);
        ++report.instances_checked;
        if (!leq(lhs, rhs, tol)) {
            std::ostringstream detail;
            detail << "k=" << k;
            fail(k == n ? "full-substitution bound" : "substitution bound", detail.str(), lhs,
                 rhs);
        }
    };

    auto enumerate_tuples = [&](int len, auto&& visit) {
        std::vector<int> tuple(static_cast<std::size_t>(len), 0);
        if (len == 0) {
            visit(tuple);
            return;
        }
        while (true) {
            visit(tuple);
            int i = len - 1;
            while (i >= 0 && tuple[static_cast<std::size_t>(i)] == p - 1) {
                tuple[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++tuple[static_cast<std::size_t>(i)];
        }
    };

    if (exhaustive) {
        for (int k = 1; k <= n; ++k) {
            enumerate_tuples(k, [&](const std::vector<int>& xs) {
                enumerate_tuples(k, [&](const std::vector<int>& ys) {
                    enumerate_tuples(n - k, [&](const std::vector<int>& zs) {
                        check_substitution(k, xs, ys, zs);
                    });
                });
            });
        }
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<int> pick(0, p - 1);
        std::uniform_int_distribution<int> pick_k(1, n);
        for (int s = 0; s < samples; ++s) {
            int k = pick_k(rng);
            std::vector<int> xs(static_cast<std::size_t>(k)), ys(static_cast<std::size_t>(k)),
                zs(static_cast<std::size_t>(n - k));
            for (int& v : xs) v = pick(rng);
            for (int& v : ys) v = pick(rng);
            for (int& v : zs) v = pick(rng);
            check_substitution(k, xs, ys, zs);
        }
    }

    // Part (c): G(<x>^{n-1}, y) <= (n-1) G(<y>^{n-1}, x) - (n-2) G(<y>^n).
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            double lhs = space.mixed(x, y);
            double rhs = (n - 1) * space.mixed(y, x) - (n - 2) * space.self_distance(y);
            ++report.instances_checked;
            if (!leq(lhs, rhs, tol))
                fail("swap bound", "(" + name(space, x) + "," + name(space, y) + ")", lhs, rhs);
        }
    }

    // Part (d): G(<x_i>) <= sum_j G(<y>^{n-1}, x_j) - (n-1) G(<y>^n).
    for_each_multiset(p, n, [&](const MultisetKey& key) {
        double lhs = space.value_at(key);
        for (int y = 0; y < p; ++y) {
            double rhs = -(n - 1) * space.self_distance(y);
            for (int xj : key) rhs += space.mixed(y, xj);
            ++report.instances_checked;
            if (!leq(lhs, rhs, tol))
                fail("hub bound", "multiset via hub " + name(space, y), lhs, rhs);
        }
    });

    return report;
}

OracleReport verify_limit_lemmas(const SequencePrefix& prefix, int a,
                                 const std::vector<int>& bs, double tol, int window) {
    const auto& space = *prefix.space;
    int n = space.arity();
    if (static_cast<int>(bs.size()) < n - 1)
        throw PreconditionNotMet("need at least n-1 parameter points");

    bool is_limit = check_limit(prefix, a, tol, window);
    if (!is_limit) throw PreconditionNotMet("candidate is not a limit of the prefix");

    bool is_special = false;
    CauchyVerdict cauchy = estimate_cauchy(prefix, window, tol);
    if (cauchy.holds_on_prefix) is_special = check_special_limit(prefix, a, tol, window);

    OracleReport report;
    int w = resolve_window(prefix, window);
    int start = prefix.length() - w;

    // Diagonal evaluation of lim G(<x_m>^k, tail...) over the window, with a
    // stabilization check: non-convergent instantiations are reported as
    // notes, per the lemma's "provided the following limits exist" proviso.
    auto diagonal_limit = [&](int k, const std::vector<int>& rest) -> std::optional<double> {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (int m = start; m < prefix.length(); ++m) {
            MultisetKey key(static_cast<std::size_t>(k), prefix.items[m]);
            key.insert(key.end(), rest.begin(), rest.end());
            double v = space.value_at(canonical_key(std::move(key)));
            if (first) lo = hi = v, first = false;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > tol) return std::nullopt;
        return (lo + hi) / 2.0;
    };

    auto check_part = [&](const std::string& part, int k, const std::vector<int>& rest) {
        MultisetKey akey(static_cast<std::size_t>(k), a);
        akey.insert(akey.end(), rest.begin(), rest.end());
        double target = space.value_at(canonical_key(std::move(akey)));
        auto lim = diagonal_limit(k, rest);
        ++report.instances_checked;
        if (!lim) {
            report.notes.push_back(part + ": limit did not stabilize on window");
            return;
        }
        bool ok = is_special ? eq(*lim, target, tol) : leq(*lim, target, tol);
        if (!ok) {
            report.pass = false;
            std::ostringstream out;
            out << part << " fails: limit " << *lim << (is_special ? " != " : " > ") << target;
            report.counterexamples.push_back(out.str());
        }
    };

    // (a)-style: k sequence slots, the rest filled from bs.
    for (int k = 1; k <= n; ++k) {
        std::vector<int> rest(bs.begin(), bs.begin() + (n - k));
        check_part("limit-lemma k=" + std::to_string(k), k, rest);
    }
    // (c)-style: remaining slots equal to the limit candidate itself.
    for (int k = 1; k < n; ++k) {
        std::vector<int> rest(static_cast<std::size_t>(n - k), a);
        check_part("limit-lemma k=" + std::to_string(k) + " (rest=a)", k, rest);
    }
    // Reversed roles: lim G(<x_m>^{n-1}, a) vs G(<a>^n).
    check_part("limit-lemma reversed", n - 1, {a});

    return report;
}

CycleCauchyVerdict cycle_cauchy(const PartialNMetricSpace& space,
                                const std::vector<int>& cycle_points, double tol) {
    CycleCauchyVerdict verdict;
    double lo = 0.0, hi = 0.0, sum = 0.0;
    bool first = true;
    int count = 0;
    for (int u : cycle_points) {
        for (int v : cycle_points) {
            double val = space.mixed(u, v);
            if (first) lo = hi = val, first = false;
            lo = std::min(lo, val);
            hi = std::max(hi, val);
            sum += val;
            ++count;
        }
    }
    verdict.cauchy = !first && hi - lo <= tol;
    if (verdict.cauchy) verdict.r = sum / count;
    return verdict;
}

std::optional<int> cycle_special_limit(const PartialNMetricSpace& space,
                                       const std::vector<int>& cycle_points, double tol) {
    std::optional<int> found;
    for (int a = 0; a < space.num_points(); ++a) {
        bool ok = true;
        double sd = space.self_distance(a);
        for (int c : cycle_points) {
            if (!eq(space.mixed(a, c), sd, tol) ||
                !eq(space.mixed(c, a) - space.self_distance(c), 0.0, tol)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            if (found)
                throw UniquenessViolation("two distinct special limits on cycle: " +
                                          space.point_name(*found) + " and " +
                                          space.point_name(a));
            found = a;
        }
    }
    return found;
}

}  // namespace pnmetric
