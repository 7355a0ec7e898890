#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnmetric/space.hpp"

namespace pnmetric {

// A finite truncation of a sequence of points of a space. Verdicts derived
// from it are always "on prefix": a window and tolerance are recorded with
// every answer.
struct SequencePrefix {
    const PartialNMetricSpace* space = nullptr;
    std::vector<int> items;  // point indices, length >= 1

    static SequencePrefix from_names(const PartialNMetricSpace& space,
                                     const std::vector<std::string>& names);
    int length() const { return static_cast<int>(items.size()); }
    int default_window() const;  // max(4, M/4), clamped to M
};

struct CauchyVerdict {
    bool holds_on_prefix = false;
    std::optional<double> r_estimate;
    int window = 0;
    double residual = 0.0;  // max |value - r_estimate| over the tail window
    double tolerance = 0.0;
};

// Pairwise Cauchy criterion: r_estimate is the mean of G(<x_{m1}>^{n-1}, x_{m2})
// over all ordered pairs in the tail window.
CauchyVerdict estimate_cauchy(const SequencePrefix& prefix, int window, double tol = 1e-9);

// a is a limit on the prefix iff |G(<a>^{n-1}, x_m) - G(<a>^n)| <= tol over
// the tail window.
bool check_limit(const SequencePrefix& prefix, int a, double tol = 1e-9, int window = -1);

// Special limit: limit plus vanishing
// G(<x_m>^{n-1}, a) - G(<x_m>^n) over the tail. Requires a Cauchy prefix.
bool check_special_limit(const SequencePrefix& prefix, int a, double tol = 1e-9,
                         int window = -1);

// Searches every point; throws UniquenessViolation if two distinct points
// pass (impossible on a validated space).
std::optional<int> special_limit_search(const SequencePrefix& prefix, double tol = 1e-9,
                                        int window = -1);

struct OracleReport {
    bool pass = true;
    std::uint64_t instances_checked = 0;
    std::vector<std::string> counterexamples;
    std::vector<std::string> notes;  // e.g. limits that did not stabilize
};

// Instantiates the four basic inequalities (prefix substitution chain, full
// substitution, the (n-1)-scaled swap, and the hub bound) exhaustively or on
// random samples.
OracleReport verify_basic_inequalities(const PartialNMetricSpace& space,
                                       bool exhaustive = true, int samples = 1000,
                                       std::uint64_t seed = 42, double tol = 1e-9);

// Checks the limit-property inequalities (for a plain limit) or equalities
// (for a special limit) on the tail window, against caller-supplied
// parameter points bs. Non-stabilizing limit expressions are reported as
// notes rather than failures.
OracleReport verify_limit_lemmas(const SequencePrefix& prefix, int a,
                                 const std::vector<int>& bs, double tol = 1e-9,
                                 int window = -1);

// Exact verdict for the eventually periodic sequences finite orbits produce:
// Cauchy iff all pairwise mixed values over the cycle coincide.
struct CycleCauchyVerdict {
    bool cauchy = false;
    double r = 0.0;  // the common value when cauchy
};
CycleCauchyVerdict cycle_cauchy(const PartialNMetricSpace& space,
                                const std::vector<int>& cycle_points, double tol = 1e-9);

// Exact special limit of an eventually periodic sequence whose cycle is
// Cauchy; throws UniquenessViolation when two distinct points qualify.
std::optional<int> cycle_special_limit(const PartialNMetricSpace& space,
                                       const std::vector<int>& cycle_points,
                                       double tol = 1e-9);

}  // namespace pnmetric
