#include "tensorcalc/connection.hpp"

#include <doctest.h>

#include <map>
#include <thread>

using namespace tcalc;

namespace {

// Every component of a table: listed entries must match, all others vanish.
void check_table(const Metric& g, const TensorField& t, std::map<Index, std::string> expected) {
    t.for_each([&](const Index& i, const Expr& e) {
        INFO("component " << i[0] << i[1] << i[2] << " = " << render(e));
        auto it = expected.find(i);
        if (it == expected.end())
            CHECK(e.is_zero());
        else
            CHECK(g.oracle().equal(e, parse(it->second)));
    });
}

}  // namespace

TEST_CASE("cylindrical tables") {
    Metric g = builtin_system("cylindrical");
    check_table(g, christoffel_first(g), {{{2, 2, 1}, "-rho"}, {{1, 2, 2}, "rho"}, {{2, 1, 2}, "rho"}});
    check_table(g, christoffel_second(g), {{{1, 2, 2}, "-rho"}, {{2, 1, 2}, "1/rho"}, {{2, 2, 1}, "1/rho"}});
    CHECK(christoffel(g).second(1, 2, 2) == normalize(parse("-rho")));
}

TEST_CASE("spherical tables") {
    Metric g = builtin_system("spherical");
    check_table(g, christoffel_first(g),
                {{{2, 2, 1}, "-r"},
                 {{3, 3, 1}, "-r*sin(theta)^2"},
                 {{1, 2, 2}, "r"},
                 {{2, 1, 2}, "r"},
                 {{3, 3, 2}, "-r^2*sin(theta)*cos(theta)"},
                 {{1, 3, 3}, "r*sin(theta)^2"},
                 {{3, 1, 3}, "r*sin(theta)^2"},
                 {{2, 3, 3}, "r^2*sin(theta)*cos(theta)"},
                 {{3, 2, 3}, "r^2*sin(theta)*cos(theta)"}});
    check_table(g, christoffel_second(g),
                {{{1, 2, 2}, "-r"},
                 {{1, 3, 3}, "-r*sin(theta)^2"},
                 {{2, 1, 2}, "1/r"},
                 {{2, 2, 1}, "1/r"},
                 {{2, 3, 3}, "-sin(theta)*cos(theta)"},
                 {{3, 1, 3}, "1/r"},
                 {{3, 3, 1}, "1/r"},
                 {{3, 2, 3}, "cot(theta)"},
                 {{3, 3, 2}, "cot(theta)"}});
}

TEST_CASE("constant metrics have vanishing symbols") {
    for (const char* n : {"cartesian", "minkowski"}) {
        Metric g = builtin_system(n);
        CHECK(christoffel_first(g).all_zero());
        CHECK(christoffel_second(g).all_zero());
    }
}

TEST_CASE("contracted symbols") {
    Metric cyl = builtin_system("cylindrical");
    CHECK(cyl.oracle().equal(contracted_christoffel(cyl)[0], parse("1/rho")));
    Metric sph = builtin_system("spherical");
    CHECK(sph.oracle().equal(contracted_christoffel(sph)[1], parse("cot(theta)")));
    for (const auto& e : contracted_christoffel(builtin_system("cartesian"))) CHECK(e.is_zero());
}

TEST_CASE("orthogonal formulas") {
    Metric cyl = builtin_system("cylindrical");
    CHECK(cyl.oracle().equal(orthogonal_christoffel(cyl).at({2, 1, 2}), parse("1/rho")));
    Metric sph = builtin_system("spherical");
    CHECK(sph.oracle().equal(orthogonal_christoffel(sph).at({3, 1, 3}), parse("1/r")));
    CHECK(orthogonal_christoffel(builtin_system("cartesian")).all_zero());
    CHECK_THROWS_AS((void)orthogonal_christoffel(builtin_system("two_sphere")), GeometryError);
}

TEST_CASE("counts") {
    CHECK(christoffel_count(1) == 1);
    CHECK(christoffel_count(3) == 18);
    CHECK(christoffel_count(4) == 40);
}

TEST_CASE("suites pass on every builtin") {
    for (const auto& n : builtin_names()) {
        INFO(n);
        Report r = verify_christoffel(builtin_system(n));
        for (const auto& c : r.checks) {
            INFO(c.name);
            CHECK(c.passed);
        }
    }
    Report cyl = verify_metric_derivative_identities(builtin_system("cylindrical"));
    CHECK(cyl.passed());
}

TEST_CASE("concurrent first access builds the table once") {
    Metric g = builtin_system("spherical");
    const ChristoffelPair* seen[4] = {};
    std::vector<std::thread> ts;
    for (int i = 0; i < 4; ++i) ts.emplace_back([&, i] { seen[i] = &christoffel(g); });
    for (auto& t : ts) t.join();
    for (auto* p : seen) CHECK(p == seen[0]);
}
