#include "tensorcalc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace tcalc {

namespace {

Matrix minor_of(const Matrix& m, std::size_t row, std::size_t col) {
    Matrix out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == row) continue;
        std::vector<Expr> r;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != col) r.push_back(m[i][j]);
        out.push_back(std::move(r));
    }
    return out;
}

Expr det_raw(const Matrix& m) {
    const std::size_t n = m.size();
    if (n == 0) return Expr(1);
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        Expr t = m[0][j] * normalize(det_raw(minor_of(m, 0, j)));
        terms.push_back(j % 2 == 0 ? t : neg(t));
    }
    return sum(std::move(terms));
}

void require_square(const Matrix& m, std::size_t n, const char* what) {
    if (m.size() != n) throw GeometryError(std::string(what) + " must have " + std::to_string(n) + " rows");
    for (const auto& r : m)
        if (r.size() != n) throw GeometryError(std::string(what) + " must be " + std::to_string(n) + "x" + std::to_string(n));
}

// Sign of a quantity that must not vanish on the sample points.
int nonvanishing_sign(const Expr& e, const Oracle& o, const std::string& what) {
    if (e.is_zero()) throw GeometryError(what + " is identically zero");
    auto v = o.sample(std::span(&e, 1)).values[0];
    bool pos = false, negv = false;
    for (double x : v) {
        if (std::fabs(x) < kAbsFloor) throw GeometryError(what + " vanishes at a sample point");
        (x > 0 ? pos : negv) = true;
    }
    if (pos && negv) throw GeometryError(what + " changes sign over the sample domain");
    return negv ? -1 : 1;
}

}  // namespace

Expr determinant(const Matrix& m) {
    require_square(m, m.size(), "determinant input");
    return normalize(det_raw(m));
}

Matrix adjugate(const Matrix& m) {
    const std::size_t n = m.size();
    Matrix adj(n, std::vector<Expr>(n));
    if (n == 1) {
        adj[0][0] = Expr(1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Expr c = determinant(minor_of(m, i, j));
            adj[j][i] = (i + j) % 2 == 0 ? c : normalize(neg(c));
        }
    return adj;
}

Matrix normalized(const Matrix& m) {
    Matrix out = m;
    for (auto& r : out)
        for (auto& e : r) e = normalize(e);
    return out;
}

CoordinateSystem::CoordinateSystem(std::string n, std::vector<std::string> c, SampleDomain d)
    : name(std::move(n)), coords(std::move(c)), domain(std::move(d)) {
    if (coords.empty()) throw GeometryError("coordinate system needs at least one coordinate");
    auto names = domain.names();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        for (std::size_t j = i + 1; j < coords.size(); ++j)
            if (coords[i] == coords[j]) throw GeometryError("duplicate coordinate name " + coords[i]);
        if (std::find(names.begin(), names.end(), coords[i]) == names.end())
            throw GeometryError("no sampling interval for coordinate " + coords[i]);
    }
}

Jacobian jacobian(const CartesianMap& m, const CoordinateSystem& s) {
    const auto n = static_cast<std::size_t>(s.dim());
    if (m.components.size() != n) throw GeometryError("map must have one component per coordinate");
    Jacobian j;
    j.J.assign(n, std::vector<Expr>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) j.J[k][i] = differentiate(m.components[k], s.coords[i]);
    j.det = determinant(j.J);
    j.det_sign = nonvanishing_sign(j.det, Oracle(s.domain), "Jacobian determinant");
    return j;
}

const std::vector<Expr>& Metric::scale_factors() const {
    if (d_->h.empty()) throw GeometryError("no scale factors: " + d_->h_error);
    return d_->h;
}

const CartesianMap& Metric::map() const {
    if (!d_->map) throw GeometryError("metric was not built from a Cartesian map");
    return *d_->map;
}

const Jacobian& Metric::jacobian() const {
    if (!d_->jac) throw GeometryError("metric was not built from a Cartesian map");
    return *d_->jac;
}

Metric Metric::with_oracle(const Oracle& o) const {
    Metric m;
    m.d_ = std::make_shared<Data>(d_->system, o);
    m.d_->system.domain = o.domain();
    m.d_->g = d_->g;
    m.d_->ginv = d_->ginv;
    m.d_->det = d_->det;
    m.d_->sqrt_det = d_->sqrt_det;
    m.d_->det_sign = d_->det_sign;
    m.d_->orthogonal = d_->orthogonal;
    m.d_->h = d_->h;
    m.d_->h_error = d_->h_error;
    m.d_->map = d_->map;
    m.d_->jac = d_->jac;
    return m;
}

Metric Metric::from_components(CoordinateSystem s, Matrix g, double tol) {
    return build(std::move(s), std::move(g), std::nullopt, std::nullopt, tol);
}

Metric Metric::from_map(CoordinateSystem s, CartesianMap m, double tol) {
    Jacobian j = tcalc::jacobian(m, s);
    const std::size_t n = j.J.size();
    Matrix g(n, std::vector<Expr>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::vector<Expr> terms;
            for (std::size_t k = 0; k < n; ++k) terms.push_back(j.J[k][a] * j.J[k][b]);
            g[a][b] = normalize(sum(std::move(terms)));
        }
    return build(std::move(s), std::move(g), std::move(m), std::move(j), tol);
}

Metric Metric::build(CoordinateSystem s, Matrix g, std::optional<CartesianMap> m, std::optional<Jacobian> j, double tol) {
    const auto n = static_cast<std::size_t>(s.dim());
    require_square(g, n, "metric table");
    g = normalized(g);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (!(g[a][b] == g[b][a]))
                throw GeometryError("metric is not symmetric at (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")");

    Metric out;
    out.d_ = std::make_shared<Data>(s, Oracle(s.domain, tol));
    Data& d = *out.d_;
    const Oracle& o = d.oracle;
    d.g = g;
    d.map = std::move(m);
    d.jac = std::move(j);
    d.det = determinant(g);
    d.det_sign = nonvanishing_sign(d.det, o, "metric determinant");

    Matrix adj = adjugate(g);
    Expr inv_det = normalize(power(d.det, Expr(-1)));
    d.ginv.assign(n, std::vector<Expr>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) d.ginv[a][b] = normalize(adj[a][b] * inv_det);
    d.sqrt_det = normalize(sqrt(Expr(d.det_sign) * d.det));

    d.orthogonal = true;
    for (std::size_t a = 0; a < n && d.orthogonal; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b && !g[a][b].is_zero() && !o.zero(g[a][b]).equal) {
                d.orthogonal = false;
                break;
            }
    if (!d.orthogonal) {
        d.h_error = "metric is not orthogonal";
    } else {
        for (std::size_t a = 0; a < n; ++a) {
            if (nonvanishing_sign(g[a][a], o, "diagonal metric entry") < 0) {
                d.h.clear();
                d.h_error = "metric has a negative diagonal entry";
                break;
            }
            d.h.push_back(normalize(sqrt(g[a][a])));
        }
    }
    return out;
}

std::vector<std::vector<Expr>> basis_vectors(const Metric& g) {
    const Jacobian& j = g.jacobian();
    const std::size_t n = j.J.size();
    std::vector<std::vector<Expr>> e(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) e[i][k] = j.J[k][i];
    return e;
}

std::vector<std::vector<Expr>> dual_basis_vectors(const Metric& g) {
    auto e = basis_vectors(g);
    const std::size_t n = e.size();
    std::vector<std::vector<Expr>> out(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<Expr> t;
            for (std::size_t j = 0; j < n; ++j) t.push_back(g.contravariant()[i][j] * e[j][k]);
            out[i][k] = normalize(sum(std::move(t)));
        }
    return out;
}

std::vector<std::string> builtin_names() { return {"cartesian", "cylindrical", "spherical", "minkowski", "two_sphere"}; }

Metric builtin_system(std::string_view name, std::uint64_t seed, double tol) {
    auto domain = [&](std::vector<Interval> iv) { return SampleDomain(std::move(iv), seed); };
    if (name == "cartesian") {
        CoordinateSystem s("cartesian", {"x", "y", "z"}, domain({{"x", -2, 2}, {"y", -2, 2}, {"z", -2, 2}}));
        return Metric::from_map(s, {{sym("x"), sym("y"), sym("z")}}, tol);
    }
    if (name == "cylindrical") {
        CoordinateSystem s("cylindrical", {"rho", "phi", "z"}, domain({{"rho", 0.5, 2}, {"phi", 0.1, 3.0}, {"z", -1, 1}}));
        return Metric::from_map(s, {{parse("rho*cos(phi)"), parse("rho*sin(phi)"), sym("z")}}, tol);
    }
    if (name == "spherical") {
        CoordinateSystem s("spherical", {"r", "theta", "phi"},
                           domain({{"r", 0.5, 2}, {"theta", 0.3, 2.8}, {"phi", 0.1, 6.0}}));
        return Metric::from_map(
            s, {{parse("r*sin(theta)*cos(phi)"), parse("r*sin(theta)*sin(phi)"), parse("r*cos(theta)")}}, tol);
    }
    if (name == "minkowski") {
        CoordinateSystem s("minkowski", {"u0", "u1", "u2", "u3"},
                           domain({{"u0", -2, 2}, {"u1", -2, 2}, {"u2", -2, 2}, {"u3", -2, 2}}));
        Matrix g(4, std::vector<Expr>(4));
        for (int i = 0; i < 4; ++i) g[i][i] = Expr(i == 0 ? 1 : -1);
        return Metric::from_components(s, g, tol);
    }
    if (name == "two_sphere") {
        CoordinateSystem s("two_sphere", {"theta", "phi"}, domain({{"theta", 0.3, 2.8}, {"phi", 0.1, 6.0}}));
        Expr a = Expr(1);
        return Metric::from_components(s, {{a * a, Expr(0)}, {Expr(0), a * a * parse("sin(theta)^2")}}, tol);
    }
    throw GeometryError("unknown builtin system '" + std::string(name) + "'");
}

}  // namespace tcalc
