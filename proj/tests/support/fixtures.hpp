#pragma once

#include "pnmetric/space.hpp"

namespace pnmetric::testsupport {

// The two-point 5-metric with a negative mixed value. Multiset values:
// {aaaaa}=0 {bbbbb}=0 {abbbb}=4 {aaaab}=3 {aabbb}=2 {aaabb}=-1.
inline PartialNMetricSpace two_point_5metric() {
    return PartialNMetricSpace::build(
        {"a", "b"}, 5,
        {
            {{"a", "a", "a", "a", "a"}, 0.0},
            {{"b", "b", "b", "b", "b"}, 0.0},
            {{"a", "b", "b", "b", "b"}, 4.0},
            {{"b", "a", "a", "a", "a"}, 3.0},
            {{"a", "a", "b", "b", "b"}, 2.0},
            {{"b", "b", "a", "a", "a"}, -1.0},
        });
}

inline PartialNMetricSpace one_point_space(double self_value = 7.0, int n = 3) {
    std::vector<std::string> multiset(static_cast<std::size_t>(n), "x");
    return PartialNMetricSpace::build({"x"}, n, {{multiset, self_value}});
}

// p(x,x)=1, p(y,y)=2, p(x,y)=2: valid but not strong.
inline PartialMetricSpace two_point_partial_metric() {
    return PartialMetricSpace::build(
        {"x", "y"}, {{{"x", "x"}, 1.0}, {{"y", "y"}, 2.0}, {{"x", "y"}, 2.0}});
}

}  // namespace pnmetric::testsupport
