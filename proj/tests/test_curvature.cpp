#include "tensorcalc/curvature.hpp"

#include "support/fd_oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace tcalc;

namespace {

const double kThetas[] = {0.4, 0.9, 1.3, 1.9, 2.6};

}  // namespace

TEST_CASE("finite-difference oracle on the 2-sphere") {
    testing::FiniteDifference fd(testing::two_sphere_metric);
    for (double th : kThetas) {
        testing::Vec u{th, 0.7};
        auto R = fd.riemann(u);
        double s2 = std::sin(th) * std::sin(th);
        CHECK(std::abs(R[0][1][0][1] - s2) < 1e-5);
        CHECK(std::abs(R[0][1][1][0] + s2) < 1e-5);
        auto ric = fd.ricci(u);
        CHECK(std::abs(ric[0][0] + 1.0) < 1e-5);
        CHECK(std::abs(ric[1][1] + s2) < 1e-5);
        CHECK(std::abs(ric[0][1]) < 1e-5);
        CHECK(std::abs(fd.scalar(u) + 2.0) < 1e-5);
    }
}

TEST_CASE("symbolic 2-sphere matches the finite-difference values") {
    Metric g = builtin_system("two_sphere");
    testing::FiniteDifference fd(testing::two_sphere_metric);
    const auto& b = curvature(g);
    for (double th : kThetas) {
        Point p;
        p.set("theta", th);
        p.set("phi", 0.7);
        auto R = fd.riemann({th, 0.7});
        for_each_index(4, 2, [&](const Index& x) {
            double want = R[x[0] - 1][x[1] - 1][x[2] - 1][x[3] - 1];
            CHECK(std::abs(evaluate(b.riemann_mixed.at(x), p) - want) < 1e-5);
        });
        auto ric = fd.ricci({th, 0.7});
        for_each_index(2, 2, [&](const Index& x) { CHECK(std::abs(evaluate(b.ricci.at(x), p) - ric[x[0] - 1][x[1] - 1]) < 1e-5); });
        CHECK(std::abs(evaluate(b.scalar, p) - fd.scalar({th, 0.7})) < 1e-5);
    }
}

TEST_CASE("2-sphere closed forms") {
    Metric g = builtin_system("two_sphere");
    const auto& b = curvature(g);
    const Oracle& o = g.oracle();
    CHECK(o.equal(b.riemann_mixed.at({1, 2, 1, 2}), parse("sin(theta)^2")));
    CHECK(o.equal(b.riemann.at({1, 2, 1, 2}), parse("sin(theta)^2")));
    CHECK(o.equal(b.riemann.at({2, 1, 2, 1}), b.riemann.at({1, 2, 1, 2})));
    CHECK(o.equal(b.riemann.at({1, 2, 2, 1}), neg(b.riemann.at({1, 2, 1, 2}))));
    CHECK(o.equal(b.riemann.at({2, 1, 1, 2}), neg(b.riemann.at({1, 2, 1, 2}))));
    // R_ij = R^a_ija
    CHECK(o.equal(b.ricci.at({1, 1}), Expr(-1)));
    CHECK(o.equal(b.ricci.at({2, 2}), parse("-sin(theta)^2")));
    CHECK(o.equal(b.scalar, Expr(-2)));
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(o.zero(b.einstein.flat(k)).equal);
        CHECK(o.zero(b.einstein_up.flat(k)).equal);
        CHECK(o.zero(b.einstein_mixed.flat(k)).equal);
    }
    CHECK_FALSE(flatness_test(g));
}

TEST_CASE("flat builtins") {
    for (const char* n : {"cartesian", "cylindrical", "spherical", "minkowski"}) {
        INFO(n);
        Metric g = builtin_system(n);
        CHECK(flatness_test(g));
        const auto& b = curvature(g);
        CHECK(g.oracle().compare_all(std::vector<std::pair<Expr, Expr>>{{b.scalar, Expr()}}).equal);
        CHECK(b.riemann.size() == static_cast<std::size_t>(std::pow(g.dim(), 4)));
    }
    CHECK(riemann_first(builtin_system("cartesian")).all_zero());
    CHECK(riemann_first(builtin_system("minkowski")).all_zero());
}

TEST_CASE("counts") {
    CHECK(riemann_counts(1).total == 0);
    CHECK(riemann_counts(2).total == 1);
    CHECK(riemann_counts(3).total == 6);
    CHECK(riemann_counts(4).total == 20);
    CHECK(riemann_counts(5).total == 50);
    for (int n = 1; n <= 8; ++n) CHECK(riemann_counts(n).total == n * n * (n * n - 1) / 12);
    CHECK(riemann_counts(4).two_distinct == 6);
    CHECK(ricci_count(4) == 10);
}

TEST_CASE("identity suites") {
    for (const char* n : {"two_sphere", "cylindrical", "spherical", "cartesian"}) {
        Metric g = builtin_system(n);
        for (const Report& r : {verify_riemann_symmetries(g), verify_bianchi(g), einstein_divergence_check(g), verify_curvature(g, 5)})
            for (const auto& c : r.checks) {
                INFO(n << ": " << c.name << " " << c.detail);
                CHECK(c.passed);
            }
    }
    Report m = verify_bianchi(builtin_system("minkowski"));
    CHECK(m.passed());
    CHECK(m.notes.size() == 1);
}
