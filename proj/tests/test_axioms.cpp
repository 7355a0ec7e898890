#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pnmetric/axioms.hpp"
#include "pnmetric/errors.hpp"
#include "support/corpus.hpp"
#include "support/fixtures.hpp"

using namespace pnmetric;
using namespace pnmetric::testsupport;

namespace {

PartialNMetricSpace two_point_2metric(double aa, double ab, double bb) {
    return PartialNMetricSpace::build(
        {"a", "b"}, 2, {{{"a", "a"}, aa}, {{"a", "b"}, ab}, {{"b", "b"}, bb}});
}

}  // namespace

TEST_CASE("check_ssd") {
    CHECK(check_ssd(two_point_5metric()).empty());
    CHECK(check_ssd(one_point_space()).empty());

    auto bad = two_point_2metric(5.0, 1.0, 0.0);
    auto violations = check_ssd(bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].axiom == Axiom::ssd);
    CHECK(violations[0].lhs == 5.0);
    CHECK(violations[0].rhs == 1.0);
}

TEST_CASE("check_sep") {
    CHECK(check_sep(two_point_5metric()).empty());
    CHECK(check_sep(one_point_space()).empty());
    CHECK(check_sep(two_point_2metric(0.0, 0.0, 0.0)).size() == 1);
}

TEST_CASE("check_sep_prime") {
    // Chain between a and b on the 5-metric: 0, 3, -1, 2, 4, 0.
    CHECK(check_sep_prime(two_point_5metric()).empty());
    CHECK(check_sep_prime(degenerate_table(2, 3)).size() == 1);
}

TEST_CASE("check_sssd") {
    CHECK(check_sssd(two_point_5metric()).empty());

    SUBCASE("construction from a strong partial metric is strong") {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 10; ++trial) {
            PartialMetricSpace pm = random_strong_partial_metric(rng, 4);
            REQUIRE(pm.is_strong(1e-9));
            CHECK(check_sssd(from_partial_metric(pm, 3)).empty());
        }
    }
    SUBCASE("a non-strict tie is a violation") {
        auto tied = two_point_2metric(1.0, 1.0, 0.0);
        auto violations = check_sssd(tied);
        CHECK(!violations.empty());
    }
}

TEST_CASE("check_ptri") {
    PartialNMetricSpace space = two_point_5metric();
    CHECK(check_ptri(space).empty());  // the table is a genuine 5-metric

    // Single-instance spot check: M = {a,b,b,b,b} distinguishing b via a:
    // 4 <= G{a,a,b,b,b} + G{a,a,a,a,b} - G{a^5} = 2 + 3 - 0.
    int a = space.point_index("a"), b = space.point_index("b");
    CHECK(space.eval_indices({a, b, b, b, b}) <=
          space.eval_indices({a, a, b, b, b}) + space.mixed(a, b) - space.self_distance(a));

    SUBCASE("a broken table is caught") {
        auto edited = PartialNMetricSpace::build(
            {"a", "b"}, 5,
            {
                {{"a", "a", "a", "a", "a"}, 0.0},
                {{"b", "b", "b", "b", "b"}, 0.0},
                {{"a", "b", "b", "b", "b"}, 4.0},
                {{"b", "a", "a", "a", "a"}, 3.0},
                {{"a", "a", "b", "b", "b"}, 2.0},
                {{"b", "b", "a", "a", "a"}, -10.0},
            });
        CHECK(!check_ptri(edited).empty());
    }
}

TEST_CASE("check_lower_bound") {
    PartialNMetricSpace space = two_point_5metric();
    CHECK(check_lower_bound(space, 0.0).empty());
    CHECK(check_lower_bound(space, 0.5).size() == 2);
    CHECK(check_lower_bound(space, -1e308).empty());
}

TEST_CASE("check_symmetry_sampled") {
    PartialNMetricSpace space = two_point_5metric();
    auto tabulated = [&](const std::vector<int>& tuple) {
        return space.eval_indices(tuple);
    };
    CHECK(check_symmetry_sampled(tabulated, 2, 5).empty());

    auto asymmetric = [](const std::vector<int>& tuple) {
        return static_cast<double>(tuple.front());
    };
    CHECK(!check_symmetry_sampled(asymmetric, 2, 5).empty());

    // The pairwise-sum formula as a closure is permutation invariant.
    PartialMetricSpace pm = two_point_partial_metric();
    auto formula = [&](const std::vector<int>& tuple) {
        double sum = 0.0;
        for (std::size_t i = 0; i < tuple.size(); ++i)
            for (std::size_t j = i + 1; j < tuple.size(); ++j) sum += pm.at(tuple[i], tuple[j]);
        return sum;
    };
    CHECK(check_symmetry_sampled(formula, 2, 4).empty());
}

TEST_CASE("validate profiles on the two-point 5-metric") {
    PartialNMetricSpace space = two_point_5metric();
    CHECK(validate(space, Profile::partial_n_metric).pass);
    CHECK(validate(space, Profile::strong).pass);
    CHECK(validate(space, Profile::n_metric).pass);
    CHECK(space.flags.partial_n_metric == true);
    CHECK(space.flags.strong == true);
    CHECK(space.flags.n_metric == true);

    // The negative entry survives untouched.
    int a = space.point_index("a"), b = space.point_index("b");
    CHECK(space.eval_indices({a, a, a, b, b}) == -1.0);
}

TEST_CASE("validate fails with a sep violation on the degenerate table") {
    PartialNMetricSpace space = degenerate_table(2, 2);
    auto report = validate(space, Profile::partial_n_metric);
    CHECK(!report.pass);
    bool has_sep = false;
    for (const auto& v : report.violations) has_sep |= v.axiom == Axiom::sep;
    CHECK(has_sep);
    CHECK(space.flags.partial_n_metric == false);
}

TEST_CASE("validation counts match closed forms") {
    PartialNMetricSpace space = two_point_5metric();
    auto report = validate(space, Profile::partial_n_metric);
    CHECK(report.counts.at("sep") == 4);  // p^2 ordered pairs
    CHECK(report.counts.at("ssd") == 4);
    // ptri: sum over multisets of (#distinct values) * p.
    std::uint64_t expected = 0;
    for_each_multiset(2, 5, [&](const MultisetKey& key) {
        int distinct = 1;
        for (std::size_t i = 1; i < key.size(); ++i)
            if (key[i] != key[i - 1]) ++distinct;
        expected += static_cast<std::uint64_t>(distinct) * 2;
    });
    CHECK(report.counts.at("ptri") == expected);
}

TEST_CASE("property: strong implies partial, sep equivalent to sep'") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        PartialNMetricSpace space = random_validated_space(rng, 4, 3);
        if (validate(space, Profile::strong).pass)
            CHECK(validate(space, Profile::partial_n_metric).pass);
        CHECK(check_sep(space).empty() == check_sep_prime(space).empty());
    }
    // On invalid tables the equivalence still holds for both generators.
    for (int trial = 0; trial < 10; ++trial) {
        PartialNMetricSpace bad = perturbed_invalid_table(rng, 3, 3);
        CHECK(check_sep(bad).empty() == check_sep_prime(bad).empty());
    }
    PartialNMetricSpace degenerate = degenerate_table(3, 3);
    CHECK(check_sep(degenerate).empty() == check_sep_prime(degenerate).empty());
}

TEST_CASE("n-metric positivity (mixed values positive for distinct pairs)") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        PartialMetricSpace metric = random_metric(rng, 4);
        PartialNMetricSpace space = from_partial_metric(metric, 3);
        REQUIRE(validate(space, Profile::n_metric).pass);
        for (int x = 0; x < space.num_points(); ++x)
            for (int y = 0; y < space.num_points(); ++y)
                if (x != y) CHECK(space.mixed(x, y) > 0.0);
    }
}
