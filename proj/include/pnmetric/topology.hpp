#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pnmetric/space.hpp"

namespace pnmetric {

// Ball membership is exact (strict <, no tolerance): relaxing it would
// change topology verdicts rather than absorb float noise.
struct Ball {
    int center = 0;
    double radius = 0.0;
    std::vector<int> members;  // ascending point indices

    bool contains(int point) const;
};

// B_eps(x) = { y : G(<x>^{n-1}, y) - G(<x>^n) < eps }; empty for eps <= 0.
Ball open_ball(const PartialNMetricSpace& space, int x, double eps);

struct BasisCheckResult {
    bool pass = true;
    std::uint64_t trials_run = 0;
    std::string counterexample;  // set when pass is false
};

// Random (x, eps, y in B_eps(x)) trials of the basis property:
// delta = eps - G(<x>^{n-1},y) + G(<x>^n) must give B_delta(y) within B_eps(x).
BasisCheckResult basis_check(const PartialNMetricSpace& space, int trials = 1000,
                             std::uint64_t seed = 42);

struct SeparationClass {
    bool is_T0 = false;
    bool is_T1 = false;
    // Distinct pairs where one (T0) or both (T1) separating radii collapse.
    std::vector<std::string> t0_witnesses;
    std::vector<std::string> t1_witnesses;
};

SeparationClass separation_class(const PartialNMetricSpace& space);

struct TopologyComparison {
    bool pass = true;
    std::string counterexample;
    std::vector<double> radius_grid;
};

// Verifies B^G_{eps/n}(x) within B^{d_G}_eps(x) within B^G_eps(x) for every
// point and every radius in an exhaustive grid (all distance gaps plus
// midpoints). Requires the n_metric profile.
TopologyComparison compare_topologies(const PartialNMetricSpace& space);

// Specialization preorder of tau[G] as DOT: edge x -> y iff x is in the
// closure of {y}, i.e. every ball around x contains y.
std::string specialization_preorder_dot(const PartialNMetricSpace& space);

}  // namespace pnmetric
