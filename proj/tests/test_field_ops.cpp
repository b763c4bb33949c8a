#include "tensorcalc/field_ops.hpp"
#include "tensorcalc/random_field.hpp"

#include "support/reference_tables.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace tcalc;

namespace {

TensorField vec(Variance v, std::vector<std::string> comps) {
    TensorField t("A", {v}, static_cast<int>(comps.size()));
    for (std::size_t k = 0; k < comps.size(); ++k) t.flat(k) = normalize(parse(comps[k]));
    return t;
}

TensorField from_physical(const testing::V3& p, Variance v, const Metric& g) {
    TensorField t("A", {v}, 3);
    for (int i = 1; i <= 3; ++i) t.at({i}) = p[static_cast<std::size_t>(i - 1)];
    return tensor_components(PhysicalForm{t, {v}}, g);
}

TensorField from_physical(const testing::M3& p, const Signature& sig, const Metric& g) {
    TensorField t("T", sig, 3);
    t.fill([&](const Index& x) { return p[static_cast<std::size_t>(x[0] - 1)][static_cast<std::size_t>(x[1] - 1)]; });
    return tensor_components(PhysicalForm{t, sig}, g);
}

void check_vec(const Metric& g, const TensorField& t, const testing::V3& want) {
    TensorField p = physical_components(t, g).table;
    for (int i = 1; i <= 3; ++i) {
        INFO("component " << i);
        CHECK(g.oracle().equal(p.at({i}), want[static_cast<std::size_t>(i - 1)]));
    }
}

// Reference displays with random physical inputs.
template <typename Tables>
void check_tables(const Metric& g, std::uint64_t seed) {
    RandomField rf(g.system().coords, seed);
    for (int trial = 0; trial < 3; ++trial) {
        Expr f = rf.scalar();
        testing::V3 A{rf.scalar(), rf.scalar(), rf.scalar()};
        testing::M3 T;
        for (auto& row : T)
            for (auto& e : row) e = rf.scalar();
        const Oracle& o = g.oracle();

        check_vec(g, gradient(f, g), Tables::grad_scalar(f));

        TensorField gA = gradient(from_physical(A, Variance::Down, g), g);
        TensorField pg = physical_components(gA, g).table;
        auto want = Tables::grad_vector(A);
        for_each_index(2, 3, [&](const Index& x) {
            INFO("grad A entry " << x[0] << x[1]);
            CHECK(o.equal(pg.at(x), want[static_cast<std::size_t>(x[0] - 1)][static_cast<std::size_t>(x[1] - 1)]));
        });

        CHECK(o.equal(divergence(from_physical(A, Variance::Up, g), g), Tables::div_vector(A)));
        check_vec(g, divergence_tensor(from_physical(T, parse_signature("uu"), g), 1, g), Tables::div_tensor(T));
        check_vec(g, curl(from_physical(A, Variance::Down, g), g), Tables::curl(A));
        CHECK(o.equal(laplacian(f, g), Tables::laplacian(f)));
        check_vec(g, laplacian_vector(from_physical(A, Variance::Up, g), g), Tables::laplacian_vector(A));
    }
}

}  // namespace

struct CylTables {
    static testing::V3 grad_scalar(const Expr& f) { return testing::cyl::grad_scalar(f); }
    static testing::M3 grad_vector(const testing::V3& a) { return testing::cyl::grad_vector(a); }
    static Expr div_vector(const testing::V3& a) { return testing::cyl::div_vector(a); }
    static testing::V3 div_tensor(const testing::M3& a) { return testing::cyl::div_tensor(a); }
    static testing::V3 curl(const testing::V3& a) { return testing::cyl::curl(a); }
    static Expr laplacian(const Expr& f) { return testing::cyl::laplacian(f); }
    static testing::V3 laplacian_vector(const testing::V3& a) { return testing::cyl::laplacian_vector(a); }
};

struct SphTables {
    static testing::V3 grad_scalar(const Expr& f) { return testing::sph::grad_scalar(f); }
    static testing::M3 grad_vector(const testing::V3& a) { return testing::sph::grad_vector(a); }
    static Expr div_vector(const testing::V3& a) { return testing::sph::div_vector(a); }
    static testing::V3 div_tensor(const testing::M3& a) { return testing::sph::div_tensor(a); }
    static testing::V3 curl(const testing::V3& a) { return testing::sph::curl(a); }
    static Expr laplacian(const Expr& f) { return testing::sph::laplacian(f); }
    static testing::V3 laplacian_vector(const testing::V3& a) { return testing::sph::laplacian_vector(a); }
};

TEST_CASE("gradient and divergence examples") {
    Metric cart = builtin_system("cartesian");
    TensorField g = gradient(parse("x^2"), cart);
    CHECK(g.at({1}) == normalize(parse("2*x")));
    CHECK(g.at({2}).is_zero());
    CHECK(g.at({3}).is_zero());
    CHECK(divergence(vec(Variance::Up, {"1", "2", "3"}), cart).is_zero());

    Metric sph = builtin_system("spherical");
    CHECK(sph.oracle().equal(divergence(vec(Variance::Up, {"r", "0", "0"}), sph), Expr(3)));
    CHECK(sph.oracle().equal(laplacian(parse("r^2"), sph), Expr(6)));

    TensorField delta("delta", parse_signature("ud"), 3);
    delta.fill([](const Index& x) { return Expr(x[0] == x[1] ? 1 : 0); });
    CHECK(divergence_tensor(delta, 1, cart).all_zero());
    CHECK_THROWS_AS((void)divergence_tensor(delta, 2, cart), TensorError);
}

TEST_CASE("laplacian invariance") {
    CHECK(laplacian(parse("x^2 + y^2 + z^2"), builtin_system("cartesian")) == Expr(6));
    Metric cyl = builtin_system("cylindrical");
    CHECK(cyl.oracle().equal(laplacian(parse("rho^2 + z^2"), cyl), Expr(6)));
    Metric sph = builtin_system("spherical");
    CHECK(sph.oracle().equal(laplacian(parse("r^2"), sph), Expr(6)));
}

TEST_CASE("reference tables, cylindrical") { check_tables<CylTables>(builtin_system("cylindrical"), 3); }
TEST_CASE("reference tables, spherical") { check_tables<SphTables>(builtin_system("spherical"), 4); }

TEST_CASE("physical components") {
    Metric cyl = builtin_system("cylindrical");
    PhysicalForm p = physical_components(vec(Variance::Up, {"0", "1", "0"}), cyl);
    CHECK(p.table.at({2}) == sym("rho"));
    Metric cart = builtin_system("cartesian");
    TensorField A = vec(Variance::Down, {"x", "y^2", "sin(z)"});
    PhysicalForm q = physical_components(A, cart);
    for (std::size_t k = 0; k < 3; ++k) CHECK(q.table.flat(k) == A.flat(k));
    CHECK_THROWS_AS((void)physical_components(A, builtin_system("minkowski")), GeometryError);
}

TEST_CASE("elements") {
    Metric cyl = builtin_system("cylindrical");
    CHECK(line_element(cyl) == normalize(parse("drho^2 + rho^2*dphi^2 + dz^2")));
    CHECK(volume_element(cyl) == normalize(parse("rho*drho*dphi*dz")));
    CHECK(line_element(builtin_system("minkowski")) == normalize(parse("du0^2 - du1^2 - du2^2 - du3^2")));
    Metric sph = builtin_system("spherical");
    CHECK(area_element_orthogonal(sph, 1) == normalize(parse("r^2*sin(theta)*dtheta*dphi")));
    CHECK(volume_element(builtin_system("cartesian")) == normalize(parse("dx*dy*dz")));
}

TEST_CASE("magnitudes, dot and cross") {
    Metric cyl = builtin_system("cylindrical");
    TensorField e2 = vec(Variance::Up, {"0", "1", "0"});
    CHECK(magnitude(e2, cyl) == sym("rho"));
    CHECK(dot(e2, e2, cyl) == normalize(parse("rho^2")));
    CHECK(cyl.oracle().equal(cos_angle(e2, e2, cyl), Expr(1)));
    CHECK_THROWS_AS((void)cos_angle(vec(Variance::Up, {"0", "0", "0"}), e2, cyl), GeometryError);

    Metric cart = builtin_system("cartesian");
    CHECK(dot(vec(Variance::Up, {"1", "2", "3"}), vec(Variance::Up, {"4", "5", "6"}), cart) == Expr(32));
    CHECK(magnitude(vec(Variance::Up, {"1", "0", "0"}), cart) == Expr(1));
    TensorField c = cross(vec(Variance::Up, {"1", "0", "0"}), vec(Variance::Up, {"0", "1", "0"}), cart);
    CHECK(c.at({1}).is_zero());
    CHECK(c.at({2}).is_zero());
    CHECK(c.at({3}) == Expr(1));
    CHECK_THROWS_AS((void)cross(vec(Variance::Up, {"1", "0"}), vec(Variance::Up, {"0", "1"}), builtin_system("two_sphere")),
                    GeometryError);
}

TEST_CASE("curl notice") {
    Metric cyl = builtin_system("cylindrical");
    std::string notice;
    TensorField c = curl(vec(Variance::Up, {"0", "1", "0"}), cyl, &notice);
    CHECK_FALSE(notice.empty());
    CHECK(cyl.oracle().equal(c.at({3}), Expr(2)));
    CHECK_THROWS_AS((void)curl(vec(Variance::Down, {"1", "0"}), builtin_system("two_sphere")), GeometryError);
}

TEST_CASE("curve length") {
    constexpr double pi = std::numbers::pi;
    Curve circle{"t", {parse("3/2"), parse("t"), parse("0")}, 0.0, 2 * pi};
    CHECK(std::abs(curve_length(circle, builtin_system("cylindrical")) - 3 * pi) < 1e-6);
    Curve seg{"t", {parse("t"), parse("0"), parse("0")}, 0.0, 1.0};
    CHECK(std::abs(curve_length(seg, builtin_system("cartesian")) - 1.0) < 1e-9);
    Curve meridian{"t", {parse("1"), parse("t"), parse("0")}, 0.0, pi / 2};
    CHECK(std::abs(curve_length(meridian, builtin_system("spherical")) - pi / 2) < 1e-6);
    Curve bad{"t", {parse("t"), parse("2*t"), parse("0"), parse("0")}, 0.0, 1.0};
    CHECK_THROWS_AS((void)curve_length(bad, builtin_system("minkowski")), DomainError);
}

TEST_CASE("operator suites on every builtin") {
    for (const auto& n : builtin_names()) {
        Report r = verify_operators(builtin_system(n), 17);
        for (const auto& c : r.checks) {
            INFO(n << ": " << c.name);
            CHECK(c.passed);
        }
    }
}
