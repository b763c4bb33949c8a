#include "tensorcalc/geometry.hpp"

#include <doctest.h>

using namespace tcalc;

namespace {

bool same(const Metric& g, const Expr& a, const std::string& b) { return g.oracle().equal(a, parse(b)); }

}  // namespace

TEST_CASE("builtin metrics from maps") {
    Metric cyl = builtin_system("cylindrical");
    CHECK(cyl.g(1, 1) == Expr(1));
    CHECK(cyl.g(2, 2) == normalize(parse("rho^2")));
    CHECK(cyl.g(3, 3) == Expr(1));
    CHECK(cyl.g(1, 2).is_zero());
    CHECK(cyl.ginv(2, 2) == normalize(parse("1/rho^2")));
    CHECK(cyl.orthogonal());
    CHECK(cyl.sqrt_det() == sym("rho"));

    Metric sph = builtin_system("spherical");
    CHECK(sph.g(1, 1) == Expr(1));
    CHECK(sph.g(2, 2) == normalize(parse("r^2")));
    CHECK(sph.g(3, 3) == normalize(parse("r^2*sin(theta)^2")));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            if (i != j) CHECK(sph.g(i, j).is_zero());
    CHECK(sph.sqrt_det() == normalize(parse("r^2*sin(theta)")));

    Metric cart = builtin_system("cartesian");
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) CHECK(cart.g(i, j) == Expr(i == j ? 1 : 0));
}

TEST_CASE("scale factors") {
    Metric cyl = builtin_system("cylindrical");
    CHECK(cyl.h(1) == Expr(1));
    CHECK(cyl.h(2) == sym("rho"));
    CHECK(cyl.h(3) == Expr(1));
    Metric sph = builtin_system("spherical");
    CHECK(same(sph, sph.h(2), "r"));
    CHECK(same(sph, sph.h(3), "r*sin(theta)"));
    CHECK_THROWS_AS((void)builtin_system("minkowski").scale_factors(), GeometryError);
}

TEST_CASE("jacobian and its determinant") {
    Metric cyl = builtin_system("cylindrical");
    CHECK(same(cyl, cyl.jacobian().det, "rho"));
    Metric sph = builtin_system("spherical");
    CHECK(same(sph, sph.jacobian().det, "r^2*sin(theta)"));
    CHECK(builtin_system("cartesian").jacobian().det == Expr(1));
    for (const char* n : {"cartesian", "cylindrical", "spherical"}) {
        Metric g = builtin_system(n);
        Expr J = g.jacobian().det;
        CHECK(g.oracle().equal(g.det(), J * J));
    }
}

TEST_CASE("inverse metric is an inverse") {
    for (const auto& name : builtin_names()) {
        Metric g = builtin_system(name);
        INFO(name);
        const int n = g.dim();
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) {
                std::vector<Expr> t;
                for (int k = 1; k <= n; ++k) t.push_back(g.ginv(i, k) * g.g(k, j));
                CHECK(g.oracle().equal(sum(t), Expr(i == j ? 1 : 0)));
            }
        if (g.orthogonal())
            for (int i = 1; i <= n; ++i) CHECK(g.oracle().equal(g.ginv(i, i) * g.g(i, i), Expr(1)));
    }
}

TEST_CASE("minkowski and the two-sphere from components") {
    Metric m = builtin_system("minkowski");
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j) CHECK(m.ginv(i, j) == m.g(i, j));
    CHECK(m.det_sign() == -1);
    CHECK(m.sqrt_det() == Expr(1));
    Metric s = builtin_system("two_sphere");
    CHECK(s.dim() == 2);
    CHECK(s.g(2, 2) == normalize(parse("sin(theta)^2")));
    CHECK_FALSE(s.has_map());
}

TEST_CASE("construction errors") {
    CoordinateSystem s("bad", {"x", "y", "z"}, SampleDomain({{"x", 0, 1}, {"y", 0, 1}, {"z", 0, 1}}));
    Matrix singular{{Expr(1), Expr(0), Expr(0)}, {Expr(0), Expr(0), Expr(0)}, {Expr(0), Expr(0), Expr(1)}};
    CHECK_THROWS_AS((void)Metric::from_components(s, singular), GeometryError);
    Matrix asym{{Expr(1), sym("x"), Expr(0)}, {Expr(0), Expr(1), Expr(0)}, {Expr(0), Expr(0), Expr(1)}};
    CHECK_THROWS_AS((void)Metric::from_components(s, asym), GeometryError);
    CHECK_THROWS_AS((void)Metric::from_map(s, {{sym("x"), sym("x"), sym("z")}}), GeometryError);
    CHECK_THROWS_AS(CoordinateSystem("dup", {"x", "x"}, SampleDomain({{"x", 0, 1}})), GeometryError);
    CHECK_THROWS_AS((void)builtin_system("torus"), GeometryError);
}

TEST_CASE("basis vectors reproduce the metric") {
    Metric cyl = builtin_system("cylindrical");
    auto E = basis_vectors(cyl);
    CHECK(same(cyl, E[1][0], "-rho*sin(phi)"));
    CHECK(same(cyl, E[1][1], "rho*cos(phi)"));
    CHECK(E[1][2].is_zero());
    Metric sph = builtin_system("spherical");
    auto F = basis_vectors(sph);
    auto Fd = dual_basis_vectors(sph);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<Expr> dot, mixed;
            for (int k = 0; k < 3; ++k) {
                dot.push_back(F[i][k] * F[j][k]);
                mixed.push_back(Fd[i][k] * F[j][k]);
            }
            CHECK(sph.oracle().equal(sum(dot), sph.g(i + 1, j + 1)));
            CHECK(sph.oracle().equal(sum(mixed), Expr(i == j ? 1 : 0)));
        }
    CHECK(same(sph, sqrt(F[2][0] * F[2][0] + F[2][1] * F[2][1] + F[2][2] * F[2][2]), "r*sin(theta)"));
}
