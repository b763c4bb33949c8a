#include "doctest.h"

#include "tensorcalc/continuum.hpp"

using namespace tcalc;

namespace {

Matrix3 mat(std::initializer_list<std::initializer_list<const char*>> rows) {
    Matrix3 m;
    int i = 0;
    for (auto row : rows) {
        int j = 0;
        for (const char* s : row) m[i][j++] = normalize(parse(s));
        ++i;
    }
    return m;
}

void check_same(const Matrix3& a, const Matrix3& b) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK_MESSAGE(normalize(a[i][j] - b[i][j]).is_zero(), render(a[i][j]) << " vs " << render(b[i][j]));
}

const Matrix3 kZero = mat({{"0", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});

}  // namespace

TEST_CASE("infinitesimal strain") {
    check_same(infinitesimal_strain(parse_vector3("x", "0", "0")), mat({{"1", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}));
    check_same(infinitesimal_strain(parse_vector3("y", "0", "0")), mat({{"0", "1/2", "0"}, {"1/2", "0", "0"}, {"0", "0", "0"}}));
    check_same(infinitesimal_strain(parse_vector3("-y", "x", "0")), kZero);
}

TEST_CASE("traction") {
    FieldVector3 t = traction(mat({{"p", "0", "0"}, {"0", "p", "0"}, {"0", "0", "p"}}), parse_vector3("1", "0", "0"));
    CHECK(render(t[0]) == "p");
    CHECK(t[1].is_zero());
    t = traction(mat({{"0", "tau", "0"}, {"tau", "0", "0"}, {"0", "0", "0"}}), parse_vector3("0", "1", "0"));
    CHECK(render(t[0]) == "tau");
    CHECK(t[1].is_zero());
    t = traction(kZero, parse_vector3("1", "2", "3"));
    for (const auto& c : t) CHECK(c.is_zero());
}

TEST_CASE("displacement gradients") {
    Oracle o = continuum_oracle();
    auto id = displacement_gradients({parse_vector3("X", "Y", "Z"), std::nullopt}, o);
    check_same(id.E, identity3());
    check_same(id.Delta, identity3());

    auto dil = displacement_gradients({parse_vector3("2*X", "2*Y", "2*Z"), std::nullopt}, o);
    check_same(dil.E, mat({{"2", "0", "0"}, {"0", "2", "0"}, {"0", "0", "2"}}));
    check_same(dil.Delta, mat({{"1/2", "0", "0"}, {"0", "1/2", "0"}, {"0", "0", "1/2"}}));

    // hand inverse of the shear, not derived from E
    auto sh = displacement_gradients({parse_vector3("X + 0.7*Y", "Y", "Z"), parse_vector3("x - 0.7*y", "y", "z")}, o);
    CHECK(sh.Delta_from_inverse_map);
    check_same(sh.E, mat({{"1", "7/10", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}));
    check_same(sh.Delta, mat({{"1", "-7/10", "0"}, {"0", "1", "0"}, {"0", "0", "1"}}));
    CHECK(identity_residual(multiply(sh.E, sh.Delta), o) <= 1e-12);

    CHECK_THROWS_AS((void)displacement_gradients({parse_vector3("X + Y", "X + Y", "Z"), std::nullopt}, o), GeometryError);
}

TEST_CASE("finger and cauchy") {
    Oracle o = continuum_oracle();
    auto sh = displacement_gradients({parse_vector3("X + 0.7*Y", "Y", "Z"), parse_vector3("x - 0.7*y", "y", "z")}, o);
    Matrix3 B = finger(sh.E);
    const double g = 0.7;
    // E E^T for the shear, written out
    CHECK(std::abs(evaluate(B[0][0], Point()) - (1 + g * g)) < 1e-15);
    check_same(B, mat({{"149/100", "7/10", "0"}, {"7/10", "1", "0"}, {"0", "0", "1"}}));
    CHECK(identity_residual(multiply(B, cauchy(sh.Delta)), o) <= 1e-12);
    CHECK(positive_definite(B, o));

    auto rigid = displacement_gradients({parse_vector3("3/5*X - 4/5*Y + 1", "4/5*X + 3/5*Y - 2", "Z + 3"), std::nullopt}, o);
    check_same(finger(rigid.E), identity3());
    check_same(cauchy(rigid.Delta), identity3());
}

TEST_CASE("velocity gradient decomposition") {
    auto d = velocity_gradient_decompose(parse_vector3("x", "y", "z"));
    check_same(d.S, identity3());
    check_same(d.Sbar, kZero);

    d = velocity_gradient_decompose(parse_vector3("-y", "x", "0"));
    check_same(d.S, kZero);
    check_same(d.Sbar, mat({{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "0", "0"}}));

    d = velocity_gradient_decompose(parse_vector3("y", "0", "0"));
    check_same(d.S, mat({{"0", "1/2", "0"}, {"1/2", "0", "0"}, {"0", "0", "0"}}));
    CHECK(render(d.Sbar[0][1]) == "-1/2");

    CHECK(symmetric_count(3) == 6);
    CHECK(antisymmetric_count(3) == 3);
}

TEST_CASE("continuum suite") {
    Report r = verify_continuum(7);
    for (const auto& c : r.checks) CHECK_MESSAGE(c.passed, c.name << " " << c.max_residual << " " << c.detail);
    CHECK(r.checks.size() >= 20);
}
