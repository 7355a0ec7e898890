#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnmetric/multiset_key.hpp"

namespace pnmetric {

// Cached axiom verdicts; filled in by axiom_checker::validate. A flag that
// is set always agrees with a fresh re-check at the tolerance it was
// produced with.
struct SpaceFlags {
    std::optional<bool> partial_n_metric;
    std::optional<bool> strong;
    std::optional<bool> n_metric;
};

// A finite set of named points together with a total real-valued function
// on size-n multisets of them. Construction validates totality and arity
// only; axiom validation is a separate explicit step.
class PartialNMetricSpace {
public:
    using Entry = std::pair<std::vector<std::string>, double>;

    static PartialNMetricSpace build(std::vector<std::string> points, int n,
                                     const std::vector<Entry>& entries);

    int arity() const { return n_; }
    int num_points() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    const std::string& point_name(int i) const { return points_[static_cast<std::size_t>(i)]; }
    int point_index(const std::string& name) const;  // throws UnknownPoint

    // Lookup at an already-canonical key. Throws MissingEntry on absent keys
    // (cannot happen for keys over this space's points).
    double value_at(const MultisetKey& canonical) const;

    // Permutation-invariant evaluation: the tuple is canonicalized to a
    // sorted multiset before lookup, so eval(sigma(tuple)) == eval(tuple)
    // exactly for every permutation sigma.
    double eval(const std::vector<std::string>& tuple) const;
    double eval_indices(MultisetKey tuple) const;

    // G over (n-1) copies of x and one y.
    double mixed(int x, int y) const { return value_at(mixed_key(x, y, n_)); }
    // G at the constant n-tuple of x.
    double self_distance(int x) const { return value_at(constant_key(x, n_)); }

    const std::map<MultisetKey, double>& table() const { return table_; }

    mutable SpaceFlags flags;

private:
    PartialNMetricSpace() = default;

    std::vector<std::string> points_;
    int n_ = 0;
    std::map<MultisetKey, double> table_;
    std::map<std::string, int> index_;
};

// A two-argument partial metric table, the input to the pairwise-sum
// construction of a partial n-metric.
class PartialMetricSpace {
public:
    using Entry = std::pair<std::pair<std::string, std::string>, double>;

    static PartialMetricSpace build(std::vector<std::string> points,
                                    const std::vector<Entry>& entries);

    int num_points() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    const std::string& point_name(int i) const { return points_[static_cast<std::size_t>(i)]; }
    int point_index(const std::string& name) const;

    double at(int x, int y) const;

    // First violated partial-metric axiom, or nullopt when all hold:
    // small self-distance, separation, triangle. Symmetry is structural
    // (unordered pair keys).
    std::optional<std::string> first_axiom_violation(double tol) const;

    // Strong partial metric: p(x,x) < p(x,y) strictly for all x != y.
    bool is_strong(double tol) const;

private:
    PartialMetricSpace() = default;

    std::vector<std::string> points_;
    std::map<std::pair<int, int>, double> table_;  // keyed with first <= second
    std::map<std::string, int> index_;
};

// A plain finite metric space, the output of associated_metric.
class MetricSpace {
public:
    MetricSpace(std::vector<std::string> points, std::map<std::pair<int, int>, double> table)
        : points_(std::move(points)), table_(std::move(table)) {}

    int num_points() const { return static_cast<int>(points_.size()); }
    const std::vector<std::string>& points() const { return points_; }
    double at(int x, int y) const;

    std::optional<std::string> first_axiom_violation(double tol) const;

private:
    std::vector<std::string> points_;
    std::map<std::pair<int, int>, double> table_;
};

// G(<x_i>_1^n) = sum over index pairs i<j of p(x_i, x_j). In checked mode
// the input must satisfy the partial-metric axioms.
PartialNMetricSpace from_partial_metric(const PartialMetricSpace& pspace, int n,
                                        bool checked = true, double tol = 1e-9);

// d_G(x,y) = G(<x>^{n-1},y) - G(<x>^n) + G(<y>^{n-1},x) - G(<y>^n).
// Requires a space validated as a partial n-metric unless force is set.
MetricSpace associated_metric(const PartialNMetricSpace& space, bool force = false);

// True iff every self-distance is zero within tol.
bool is_n_metric(const PartialNMetricSpace& space, double tol = 1e-9);

}  // namespace pnmetric
