#include "pnmetric/topology.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "pnmetric/errors.hpp"

namespace pnmetric {

namespace {

// Gap of y from x: G(<x>^{n-1}, y) - G(<x>^n), the quantity balls compare
// against the radius.
double gap(const PartialNMetricSpace& space, int x, int y) {
    return space.mixed(x, y) - space.self_distance(x);
}

std::string members_to_string(const PartialNMetricSpace& space, const std::vector<int>& members) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out << ",";
        out << space.point_name(members[i]);
    }
    out << "}";
    return out.str();
}

}  // namespace

bool Ball::contains(int point) const {
    return std::binary_search(members.begin(), members.end(), point);
}

Ball open_ball(const PartialNMetricSpace& space, int x, double eps) {
    if (x < 0 || x >= space.num_points()) throw UnknownPoint("ball center out of range");
    Ball ball;
    ball.center = x;
    ball.radius = eps;
    if (eps <= 0.0) return ball;
    for (int y = 0; y < space.num_points(); ++y)
        if (gap(space, x, y) < eps) ball.members.push_back(y);
    return ball;
}

BasisCheckResult basis_check(const PartialNMetricSpace& space, int trials, std::uint64_t seed) {
    BasisCheckResult result;
    std::mt19937_64 rng(seed);
    int p = space.num_points();
    std::uniform_int_distribution<int> pick_point(0, p - 1);

    double max_gap = 0.0;
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y) max_gap = std::max(max_gap, gap(space, x, y));
    std::uniform_real_distribution<double> pick_eps(1e-12, max_gap + 1.0);

    for (int t = 0; t < trials; ++t) {
        int x = pick_point(rng);
        double eps = pick_eps(rng);
        Ball outer = open_ball(space, x, eps);
        if (outer.members.empty()) continue;  // cannot happen for eps > 0
        std::uniform_int_distribution<std::size_t> pick_member(0, outer.members.size() - 1);
        int y = outer.members[pick_member(rng)];
        double delta = eps - gap(space, x, y);
        Ball inner = open_ball(space, y, delta);
        ++result.trials_run;
        for (int z : inner.members) {
            if (!outer.contains(z)) {
                result.pass = false;
                std::ostringstream out;
                out << "B_" << delta << "(" << space.point_name(y) << ") = "
                    << members_to_string(space, inner.members) << " escapes B_" << eps << "("
                    << space.point_name(x) << ") = " << members_to_string(space, outer.members)
                    << " at " << space.point_name(z);
                result.counterexample = out.str();
                return result;
            }
        }
    }
    return result;
}

SeparationClass separation_class(const PartialNMetricSpace& space) {
    SeparationClass cls;
    cls.is_T0 = true;
    cls.is_T1 = true;
    int p = space.num_points();
    for (int x = 0; x < p; ++x) {
        for (int y = x + 1; y < p; ++y) {
            double ex = gap(space, x, y);
            double ey = gap(space, y, x);
            std::string pair = "(" + space.point_name(x) + "," + space.point_name(y) + ")";
            if (!(ex > 0.0 || ey > 0.0)) {
                cls.is_T0 = false;
                cls.t0_witnesses.push_back(pair);
            }
            if (!(ex > 0.0 && ey > 0.0)) {
                cls.is_T1 = false;
                cls.t1_witnesses.push_back(pair);
            }
        }
    }
    return cls;
}

TopologyComparison compare_topologies(const PartialNMetricSpace& space) {
    if (!space.flags.n_metric.value_or(false))
        throw NotAnNMetric("compare_topologies requires a space validated under the n_metric profile");

    TopologyComparison result;
    int p = space.num_points();
    int n = space.arity();
    MetricSpace metric = associated_metric(space);

    // Every distinct ball of either family is witnessed by crossing one of
    // these values; midpoints pick up the open intervals between them.
    std::set<double> thresholds;
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            double g = gap(space, x, y);
            if (g > 0.0) {
                thresholds.insert(g);
                thresholds.insert(g * n);
            }
            double d = metric.at(x, y);
            if (d > 0.0) thresholds.insert(d);
        }
    }
    std::vector<double> grid(thresholds.begin(), thresholds.end());
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) mids.push_back((grid[i] + grid[i + 1]) / 2.0);
    if (!grid.empty()) {
        mids.push_back(grid.front() / 2.0);
        mids.push_back(grid.back() + 1.0);
    } else {
        mids.push_back(1.0);
    }
    grid.insert(grid.end(), mids.begin(), mids.end());
    std::sort(grid.begin(), grid.end());
    result.radius_grid = grid;

    for (int x = 0; x < p; ++x) {
        for (double eps : grid) {
            Ball small = open_ball(space, x, eps / n);
            Ball big = open_ball(space, x, eps);
            std::vector<int> middle;  // B^{d_G}_eps(x)
            for (int y = 0; y < p; ++y)
                if (metric.at(x, y) < eps) middle.push_back(y);

            auto subset = [](const std::vector<int>& a, const std::vector<int>& b) {
                return std::includes(b.begin(), b.end(), a.begin(), a.end());
            };
            if (!subset(small.members, middle) || !subset(middle, big.members)) {
                result.pass = false;
                std::ostringstream out;
                out << "double inclusion fails at x=" << space.point_name(x) << " eps=" << eps
                    << ": B^G_{eps/n}=" << members_to_string(space, small.members)
                    << " B^d=" << members_to_string(space, middle)
                    << " B^G=" << members_to_string(space, big.members);
                result.counterexample = out.str();
                return result;
            }
        }
    }
    return result;
}

std::string specialization_preorder_dot(const PartialNMetricSpace& space) {
    // x <= y (x in closure of {y}) iff gap(z, y) <= gap(z, x) for every z.
    int p = space.num_points();
    std::ostringstream out;
    out << "digraph specialization {\n";
    for (int x = 0; x < p; ++x) out << "  \"" << space.point_name(x) << "\";\n";
    for (int x = 0; x < p; ++x) {
        for (int y = 0; y < p; ++y) {
            if (x == y) continue;
            bool below = true;
            for (int z = 0; z < p && below; ++z)
                below = gap(space, z, y) <= gap(space, z, x);
            if (below)
                out << "  \"" << space.point_name(x) << "\" -> \"" << space.point_name(y) << "\";\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace pnmetric
