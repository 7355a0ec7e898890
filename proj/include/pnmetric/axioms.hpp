#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pnmetric/space.hpp"

namespace pnmetric {

enum class Axiom { sep, sep_prime, ssd, sssd, sym, ptri, lower_bound };

std::string axiom_name(Axiom a);

// One failed inequality instance. Re-evaluating the witness tuples on the
// space reproduces lhs and rhs exactly.
struct Violation {
    Axiom axiom;
    std::string witness;               // human-readable instantiation
    std::vector<MultisetKey> tuples;   // the keys involved, machine-checkable
    double lhs = 0.0;
    double rhs = 0.0;
};

enum class Profile { partial_n_metric, strong, n_metric };

std::string profile_name(Profile p);
Profile profile_from_name(const std::string& name);

struct ValidationReport {
    Profile profile = Profile::partial_n_metric;
    bool pass = false;
    std::vector<Violation> violations;          // truncated at `cap`
    std::uint64_t total_violations = 0;         // before truncation
    std::map<std::string, std::uint64_t> counts;  // inequality instances per axiom
    double tolerance = 1e-9;
};

struct CheckOptions {
    double tol = 1e-9;
    std::size_t violation_cap = 100;
};

// (ssd): G(<x>^n) <= G(<x>^{n-1}, y) over all ordered pairs.
std::vector<Violation> check_ssd(const PartialNMetricSpace& space, double tol = 1e-9);

// (sep), backward direction: no distinct x, y with both mixed values equal
// to the respective self-distances. The forward direction is structural.
std::vector<Violation> check_sep(const PartialNMetricSpace& space, double tol = 1e-9);

// (sep'): for distinct x, y the chain G(<x>^{n-k} <y>^k), k = 0..n, is not
// all-equal within tol.
std::vector<Violation> check_sep_prime(const PartialNMetricSpace& space, double tol = 1e-9);

// (sssd): strict inequality with margin > tol for every distinct ordered pair.
std::vector<Violation> check_sssd(const PartialNMetricSpace& space, double tol = 1e-9);

// (ptri), deduplicated by (canonical multiset, distinguished value, y).
std::vector<Violation> check_ptri(const PartialNMetricSpace& space, double tol = 1e-9);

// Self-distances bounded below by r.
std::vector<Violation> check_lower_bound(const PartialNMetricSpace& space, double r,
                                         double tol = 1e-9);

// Sampled symmetry check for black-box evaluators; tabulated spaces are
// symmetric by construction and never need this.
using Evaluator = std::function<double(const std::vector<int>&)>;
std::vector<Violation> check_symmetry_sampled(const Evaluator& evaluator, int num_points,
                                              int n, int samples = 1000,
                                              std::uint64_t seed = 42, double tol = 1e-9);

// Runs the profile's axiom set, aggregates violations, and caches the
// verdict in the space's flags.
ValidationReport validate(const PartialNMetricSpace& space, Profile profile,
                          const CheckOptions& options = {});

}  // namespace pnmetric
