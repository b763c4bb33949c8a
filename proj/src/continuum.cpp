#include "tensorcalc/continuum.hpp"

#include "tensorcalc/random_field.hpp"

#include <cmath>

namespace tcalc {

namespace {

template <typename F>
Matrix3 build(F&& f) {
    Matrix3 m;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = normalize(f(i, j));
    return m;
}

Substitution present_of_past(const FieldVector3& present) {
    Substitution s;
    for (int k = 0; k < 3; ++k) s.emplace_back(kPresentCoords[k], present[k]);
    return s;
}

std::vector<Expr> flatten(const Matrix3& a) {
    std::vector<Expr> v;
    for (const auto& row : a) v.insert(v.end(), row.begin(), row.end());
    return v;
}

bool structurally_equal(const Expr& a, const Expr& b) { return normalize(a - b).is_zero(); }

// symmetric = +1 checks a = a^T, -1 checks a = -a^T
bool has_symmetry(const Matrix3& a, int sign) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!structurally_equal(a[i][j], Expr(sign) * a[j][i])) return false;
    return true;
}

using MatPairs = std::vector<std::pair<Expr, Expr>>;

void push_pairs(MatPairs& p, const Matrix3& a, const Matrix3& b) {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p.emplace_back(a[i][j], b[i][j]);
}

}  // namespace

Oracle continuum_oracle(std::uint64_t seed, double tol) {
    std::vector<Interval> iv;
    for (const auto& c : kPresentCoords) iv.push_back({c, -2.0, 2.0});
    for (const auto& c : kPastCoords) iv.push_back({c, -2.0, 2.0});
    iv.push_back({"t", 0.5, 2.0});
    return Oracle(SampleDomain(std::move(iv), seed), tol);
}

Matrix3 transpose(const Matrix3& a) {
    return build([&](int i, int j) { return a[j][i]; });
}

Matrix3 multiply(const Matrix3& a, const Matrix3& b) {
    return build([&](int i, int j) { return a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]; });
}

Matrix3 identity3() {
    return build([](int i, int j) { return Expr(i == j ? 1 : 0); });
}

Matrix3 velocity_gradient(const FieldVector3& v) {
    return build([&](int i, int j) { return differentiate(v[j], kPresentCoords[i]); });
}

Matrix3 infinitesimal_strain(const FieldVector3& d) {
    Matrix3 g = velocity_gradient(d);
    return build([&](int i, int j) { return num(1, 2) * (g[i][j] + g[j][i]); });
}

FieldVector3 traction(const Matrix3& sigma, const FieldVector3& n) {
    FieldVector3 t;
    for (int i = 0; i < 3; ++i) t[i] = normalize(sigma[i][0] * n[0] + sigma[i][1] * n[1] + sigma[i][2] * n[2]);
    return t;
}

DisplacementGradients displacement_gradients(const Motion& m, const Oracle& o) {
    DisplacementGradients out;
    out.E = build([&](int i, int j) { return differentiate(m.present[i], kPastCoords[j]); });
    Matrix E;
    for (const auto& row : out.E) E.emplace_back(row.begin(), row.end());
    Expr det = normalize(determinant(E));
    SampleValues sv = o.sample(std::vector<Expr>{det});
    for (double v : sv.values[0])
        if (!(std::abs(v) > kAbsFloor)) throw GeometryError("singular map: det E vanishes at a sample point");
    if (m.past) {
        Substitution at = present_of_past(m.present);
        out.Delta = build([&](int i, int j) { return substitute(differentiate((*m.past)[i], kPresentCoords[j]), at); });
        out.Delta_from_inverse_map = true;
    } else {
        Matrix adj = adjugate(E);
        Expr inv = power(det, Expr(-1));
        out.Delta = build([&](int i, int j) { return adj[i][j] * inv; });
    }
    return out;
}

Matrix3 finger(const Matrix3& E) { return multiply(E, transpose(E)); }

Matrix3 cauchy(const Matrix3& Delta) { return multiply(transpose(Delta), Delta); }

VelocityDecomposition velocity_gradient_decompose(const FieldVector3& v) {
    VelocityDecomposition d;
    d.grad = velocity_gradient(v);
    d.S = build([&](int i, int j) { return num(1, 2) * (d.grad[i][j] + d.grad[j][i]); });
    d.Sbar = build([&](int i, int j) { return num(1, 2) * (d.grad[i][j] - d.grad[j][i]); });
    return d;
}

bool positive_definite(const Matrix3& a, const Oracle& o) {
    std::vector<Expr> minors{a[0][0], normalize(a[0][0] * a[1][1] - a[0][1] * a[1][0])};
    Matrix full;
    for (const auto& row : a) full.emplace_back(row.begin(), row.end());
    minors.push_back(normalize(determinant(full)));
    SampleValues sv = o.sample(minors);
    for (const auto& row : sv.values)
        for (double v : row)
            if (!(v > 0)) return false;
    return true;
}

double identity_residual(const Matrix3& a, const Oracle& o) {
    auto v = flatten(a);
    SampleValues sv = o.sample(v);
    double worst = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        double want = k % 4 == 0 ? 1.0 : 0.0;
        for (double x : sv.values[k]) worst = std::max(worst, std::abs(x - want));
    }
    return worst;
}

FieldVector3 parse_vector3(const std::string& a, const std::string& b, const std::string& c) {
    return {normalize(parse(a)), normalize(parse(b)), normalize(parse(c))};
}

Report verify_continuum(std::uint64_t seed, double tol) {
    Oracle o = continuum_oracle(seed, tol);
    Report r;
    r.title = "continuum";

    struct Case {
        const char* name;
        Motion m;
    };
    std::vector<Case> maps{
        {"simple shear 0.7", {parse_vector3("X + 0.7*Y", "Y", "Z"), parse_vector3("x - 0.7*y", "y", "z")}},
        {"rotation and translation",
         {parse_vector3("3/5*X - 4/5*Y + 1", "4/5*X + 3/5*Y - 2", "Z + 3"),
          parse_vector3("3/5*(x - 1) + 4/5*(y + 2)", "-4/5*(x - 1) + 3/5*(y + 2)", "z - 3")}},
        {"nonlinear shear", {parse_vector3("X + sin(Y)/3", "Y + Z^2/5", "Z"), parse_vector3("x - sin(y - z^2/5)/3", "y - z^2/5", "z")}},
        {"dilation without inverse map", {parse_vector3("2*X", "2*Y", "2*Z"), std::nullopt}},
    };
    for (const auto& c : maps) {
        DisplacementGradients dg = displacement_gradients(c.m, o);
        Matrix3 B = finger(dg.E), Binv = cauchy(dg.Delta);
        std::string tag = std::string(" (") + c.name + ")";
        double e1 = identity_residual(multiply(dg.E, dg.Delta), o);
        double e2 = identity_residual(multiply(B, Binv), o);
        r.add("E.Delta = I" + tag, e1 <= 1e-12, 9, e1);
        r.add("B.B^-1 = I" + tag, e2 <= 1e-12, 9, e2);
        r.add("B and B^-1 symmetric" + tag, has_symmetry(B, 1) && has_symmetry(Binv, 1), 18);
        r.add("B and B^-1 positive definite" + tag, positive_definite(B, o) && positive_definite(Binv, o), 6);
        if (std::string_view(c.name) == "rotation and translation") {
            MatPairs p;
            push_pairs(p, B, identity3());
            push_pairs(p, Binv, identity3());
            r.add("rigid motion gives B = B^-1 = I", o.compare_all(p), p.size());
        }
    }

    std::vector<std::string> xyz(kPresentCoords.begin(), kPresentCoords.end());
    RandomField rf(xyz, seed);
    bool exact = true, sym_ok = true, skew = true, strain_sym = true;
    MatPairs rate;
    for (int k = 0; k < 5; ++k) {
        FieldVector3 v{rf.scalar(), rf.scalar(), rf.scalar()};
        VelocityDecomposition d = velocity_gradient_decompose(v);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) exact = exact && structurally_equal(d.S[i][j] + d.Sbar[i][j], d.grad[i][j]);
        sym_ok = sym_ok && has_symmetry(d.S, 1);
        skew = skew && has_symmetry(d.Sbar, -1);
        FieldVector3 disp;
        for (int i = 0; i < 3; ++i) disp[i] = normalize(sym("t") * v[i]);
        Matrix3 gamma = infinitesimal_strain(disp);
        strain_sym = strain_sym && has_symmetry(gamma, 1);
        Matrix3 rate_k = build([&](int i, int j) { return differentiate(gamma[i][j], "t"); });
        push_pairs(rate, rate_k, d.S);
    }
    r.add("S + Sbar = grad v exactly", exact, 45);
    r.add("S symmetric", sym_ok, 45);
    r.add("Sbar antisymmetric", skew, 45);
    r.add("strain symmetric", strain_sym, 45);
    r.add("S = d(gamma)/dt for d = t v", o.compare_all(rate), rate.size());

    int upper = 0, strict = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            ++upper;
            if (j > i) ++strict;
        }
    bool counts = upper == symmetric_count(3) && strict == antisymmetric_count(3) && upper + strict == 9;
    r.add("independent components 6 + 3 = 9", counts, 3, 0,
          std::to_string(upper) + " + " + std::to_string(strict) + " = " + std::to_string(upper + strict));

    MatPairs recip;
    for (int k = 0; k < 3; ++k) {
        Matrix3 sigma;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) sigma[i][j] = sigma[j][i] = rf.scalar();
        FieldVector3 n{rf.scalar(), rf.scalar(), rf.scalar()}, m{rf.scalar(), rf.scalar(), rf.scalar()};
        FieldVector3 tn = traction(sigma, n), tm = traction(sigma, m);
        recip.emplace_back(m[0] * tn[0] + m[1] * tn[1] + m[2] * tn[2], n[0] * tm[0] + n[1] * tm[1] + n[2] * tm[2]);
    }
    r.add("traction reciprocity m.(sigma n) = n.(sigma m)", o.compare_all(recip), recip.size());
    return r;
}

}  // namespace tcalc
