#include "tensorcalc/field_ops.hpp"

#include "check_helpers.hpp"
#include "tensorcalc/random_field.hpp"
#include "tensorcalc/special_tensors.hpp"

#include <cmath>
#include <functional>

namespace tcalc {

namespace {

using detail::add_pairs_check;
using detail::add_table_check;
using detail::Pairs;
using detail::pd;

void need_rank1(const TensorField& a, const char* op) {
    if (a.rank() != 1) throw TensorError(std::string(op) + " needs a rank-1 field");
}

void need_3d(const Metric& g, const char* op) {
    if (g.dim() != 3) throw GeometryError(std::string(op) + " is defined in 3D only");
}

const std::vector<Expr>& scale(const Metric& g) {
    if (!g.has_scale_factors()) throw GeometryError("physical components need an orthogonal metric with scale factors");
    return g.scale_factors();
}

TensorField as_up(const TensorField& a, const Metric& g) {
    return a.signature()[0] == Variance::Up ? a : raise_index(a, 1, g);
}

TensorField as_down(const TensorField& a, const Metric& g, std::string* notice) {
    if (a.signature()[0] == Variance::Down) return a;
    if (notice) *notice = "contravariant input lowered to covariant before taking the curl";
    return lower_index(a, 1, g);
}

int eps3(int i, int j, int k) { return epsilon(std::vector{i, j, k}, 3); }

TensorField make_curl(const TensorField& in, const Metric& g, std::string* notice, bool full) {
    need_3d(g, "curl");
    need_rank1(in, "curl");
    TensorField a = as_down(in, g, notice);
    const auto& G = christoffel(g);
    Expr inv = normalize(power(g.sqrt_det(), Expr(-1)));
    TensorField out("curl " + in.name(), parse_signature("u"), 3);
    out.fill([&](const Index& x) {
        const int k = x[0];
        std::vector<Expr> t;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                int e = eps3(i, j, k);
                if (e == 0) continue;
                std::vector<Expr> in_terms{pd(g, a.at({j}), i)};
                if (full)
                    for (int l = 1; l <= 3; ++l) in_terms.push_back(neg(G.second(l, j, i) * a.at({l})));
                t.push_back(Expr(e) * sum(std::move(in_terms)));
            }
        return normalize(inv * sum(std::move(t)));
    });
    return out;
}

}  // namespace

PhysicalForm physical_components(const TensorField& t, const Metric& g) {
    const auto& h = scale(g);
    PhysicalForm p{t, t.signature()};
    p.table.rename(t.name() + "^");
    p.table.fill([&](const Index& x) {
        std::vector<Expr> f{t.at(x)};
        for (std::size_t s = 0; s < x.size(); ++s) {
            const Expr& hs = h[static_cast<std::size_t>(x[s] - 1)];
            f.push_back(t.signature()[s] == Variance::Up ? hs : power(hs, Expr(-1)));
        }
        return normalize(product(std::move(f)));
    });
    return p;
}

TensorField tensor_components(const PhysicalForm& p, const Metric& g) {
    const auto& h = scale(g);
    TensorField t = p.table;
    t.fill([&](const Index& x) {
        std::vector<Expr> f{p.table.at(x)};
        for (std::size_t s = 0; s < x.size(); ++s) {
            const Expr& hs = h[static_cast<std::size_t>(x[s] - 1)];
            f.push_back(p.source[s] == Variance::Up ? power(hs, Expr(-1)) : hs);
        }
        return normalize(product(std::move(f)));
    });
    return t;
}

TensorField gradient(const Expr& f, const Metric& g, Variance v) {
    TensorField t("grad", parse_signature("d"), g.dim());
    t.fill([&](const Index& x) { return pd(g, f, x[0]); });
    return v == Variance::Down ? t : raise_index(t, 1, g);
}

TensorField gradient(const TensorField& a, const Metric& g) {
    if (a.rank() < 1 || a.rank() > 2) throw TensorError("gradient of a field needs rank 1 or 2");
    TensorField d = covariant_derivative(a, g);
    Signature sig{Variance::Down};
    sig.insert(sig.end(), a.signature().begin(), a.signature().end());
    TensorField out("grad " + a.name(), sig, g.dim(), a.weight());
    out.fill([&](const Index& x) {
        Index y(x.begin() + 1, x.end());
        y.push_back(x[0]);
        return d.at(y);
    });
    return out;
}

Expr divergence(const TensorField& a, const Metric& g) {
    need_rank1(a, "divergence");
    TensorField u = as_up(a, g);
    std::vector<Expr> t;
    for (int i = 1; i <= g.dim(); ++i) t.push_back(pd(g, normalize(g.sqrt_det() * u.at({i})), i));
    return normalize(power(g.sqrt_det(), Expr(-1)) * sum(std::move(t)));
}

Expr divergence_contracted(const TensorField& a, const Metric& g) {
    need_rank1(a, "divergence");
    return contract(covariant_derivative(as_up(a, g), g), 1, 2).value();
}

TensorField divergence_tensor(const TensorField& t, int slot, const Metric& g) {
    if (slot < 1 || slot > t.rank()) throw TensorError("slot out of range");
    if (t.signature()[static_cast<std::size_t>(slot - 1)] != Variance::Up)
        throw TensorError("divergence needs a contravariant slot");
    return contract(covariant_derivative(t, g), slot, t.rank() + 1).rename("div " + t.name());
}

TensorField curl(const TensorField& a, const Metric& g, std::string* notice) { return make_curl(a, g, notice, false); }

TensorField curl_full(const TensorField& a, const Metric& g, std::string* notice) { return make_curl(a, g, notice, true); }

Expr laplacian(const Expr& f, const Metric& g) {
    const int n = g.dim();
    std::vector<Expr> df;
    for (int j = 1; j <= n; ++j) df.push_back(pd(g, f, j));
    std::vector<Expr> t;
    for (int i = 1; i <= n; ++i) {
        std::vector<Expr> in;
        for (int j = 1; j <= n; ++j)
            if (!g.ginv(i, j).is_zero()) in.push_back(g.ginv(i, j) * df[static_cast<std::size_t>(j - 1)]);
        t.push_back(pd(g, normalize(g.sqrt_det() * sum(std::move(in))), i));
    }
    return normalize(power(g.sqrt_det(), Expr(-1)) * sum(std::move(t)));
}

Expr laplacian_orthogonal(const Expr& f, const Metric& g) {
    const auto& h = scale(g);
    Expr H = normalize(product(h));
    std::vector<Expr> t;
    for (int i = 1; i <= g.dim(); ++i) {
        const Expr& hi = h[static_cast<std::size_t>(i - 1)];
        t.push_back(pd(g, normalize(H * power(hi, Expr(-2)) * pd(g, f, i)), i));
    }
    return normalize(power(H, Expr(-1)) * sum(std::move(t)));
}

TensorField laplacian_vector(const TensorField& b, const Metric& g) {
    need_rank1(b, "vector Laplacian");
    const int n = g.dim();
    TensorField d2 = second_covariant_derivative(b, g);
    TensorField out("lap " + b.name(), b.signature(), n, b.weight());
    out.fill([&](const Index& x) {
        std::vector<Expr> t;
        for (int j = 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                if (!g.ginv(j, k).is_zero()) t.push_back(g.ginv(j, k) * d2.at({x[0], j, k}));
        return normalize(sum(std::move(t)));
    });
    return out;
}

std::string differential(const Metric& g, int i) { return "d" + g.coord(i); }

Expr line_element(const Metric& g) {
    std::vector<Expr> t;
    for (int i = 1; i <= g.dim(); ++i)
        for (int j = 1; j <= g.dim(); ++j) t.push_back(g.g(i, j) * sym(differential(g, i)) * sym(differential(g, j)));
    return normalize(sum(std::move(t)));
}

Expr area_element(const Metric& g, int i) {
    need_3d(g, "area element");
    if (i < 1 || i > 3) throw GeometryError("area element index out of range");
    int j = i % 3 + 1, k = j % 3 + 1;
    if (j > k) std::swap(j, k);
    Expr s = normalize(power(g.det_sign() * g.det() * g.ginv(i, i), num(1, 2)));
    return normalize(s * sym(differential(g, j)) * sym(differential(g, k)));
}

Expr area_element_orthogonal(const Metric& g, int i) {
    need_3d(g, "area element");
    const auto& h = scale(g);
    int j = i % 3 + 1, k = j % 3 + 1;
    if (j > k) std::swap(j, k);
    return normalize(h[static_cast<std::size_t>(j - 1)] * h[static_cast<std::size_t>(k - 1)] * sym(differential(g, j)) *
                     sym(differential(g, k)));
}

Expr volume_element(const Metric& g) {
    std::vector<Expr> f{g.sqrt_det()};
    for (int i = 1; i <= g.dim(); ++i) f.push_back(sym(differential(g, i)));
    return normalize(product(std::move(f)));
}

Expr dot(const TensorField& a, const TensorField& b, const Metric& g) {
    need_rank1(a, "dot");
    need_rank1(b, "dot");
    const int n = g.dim();
    const Variance va = a.signature()[0], vb = b.signature()[0];
    std::vector<Expr> t;
    for (int i = 1; i <= n; ++i) {
        if (va != vb) {
            t.push_back(a.at({i}) * b.at({i}));
            continue;
        }
        for (int j = 1; j <= n; ++j) {
            const Expr& m = va == Variance::Up ? g.g(i, j) : g.ginv(i, j);
            if (!m.is_zero()) t.push_back(m * a.at({i}) * b.at({j}));
        }
    }
    return normalize(sum(std::move(t)));
}

std::array<Expr, 3> magnitude_routes(const TensorField& a, const Metric& g) {
    need_rank1(a, "magnitude");
    TensorField up = as_up(a, g);
    TensorField down = a.signature()[0] == Variance::Down ? a : lower_index(a, 1, g);
    auto root = [](const Expr& e) { return normalize(power(e, num(1, 2))); };
    return {root(dot(down, down, g)), root(dot(up, up, g)), root(dot(up, down, g))};
}

Expr magnitude(const TensorField& a, const Metric& g) {
    auto r = magnitude_routes(a, g);
    return a.signature()[0] == Variance::Up ? r[1] : r[0];
}

Expr cos_angle(const TensorField& a, const TensorField& b, const Metric& g) {
    Expr ma = magnitude(a, g), mb = magnitude(b, g);
    SampleValues sv = g.oracle().sample(std::vector<Expr>{ma, mb});
    for (const auto& row : sv.values)
        for (double v : row)
            if (std::abs(v) <= kAbsFloor) throw GeometryError("null vector at a sample point; angle undefined");
    return normalize(dot(a, b, g) * power(ma * mb, Expr(-1)));
}

TensorField cross(const TensorField& a, const TensorField& b, const Metric& g, Variance out) {
    need_3d(g, "cross product");
    need_rank1(a, "cross product");
    need_rank1(b, "cross product");
    const bool down = out == Variance::Down;
    TensorField x = down ? as_up(a, g) : as_down(a, g, nullptr);
    TensorField y = down ? as_up(b, g) : as_down(b, g, nullptr);
    Expr f = down ? g.sqrt_det() : normalize(power(g.sqrt_det(), Expr(-1)));
    TensorField c(a.name() + " x " + b.name(), {out}, 3);
    c.fill([&](const Index& idx) {
        std::vector<Expr> t;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                int e = eps3(i, j, idx[0]);
                if (e != 0) t.push_back(Expr(e) * x.at({i}) * y.at({j}));
            }
        return normalize(f * sum(std::move(t)));
    });
    return c;
}

double curve_length(const Curve& c, const Metric& g, double tol, int max_depth) {
    if (static_cast<int>(c.u.size()) != g.dim()) throw GeometryError("curve dimension does not match the system");
    if (!(c.t1 < c.t2)) throw GeometryError("curve interval must satisfy t1 < t2");
    Substitution sub;
    for (int i = 1; i <= g.dim(); ++i) sub.emplace_back(g.coord(i), c.u[static_cast<std::size_t>(i - 1)]);
    std::vector<Expr> du;
    for (const auto& e : c.u) du.push_back(differentiate(e, c.param));
    std::vector<Expr> t;
    for (int i = 1; i <= g.dim(); ++i)
        for (int j = 1; j <= g.dim(); ++j)
            t.push_back(substitute(g.g(i, j), sub) * du[static_cast<std::size_t>(i - 1)] * du[static_cast<std::size_t>(j - 1)]);
    Expr q = normalize(sum(std::move(t)));
    Point p;
    auto f = [&](double s) {
        p.set(c.param, s);
        double v = evaluate(q, p);
        if (v < 0) throw DomainError("negative squared speed along the curve", render(q));
        return std::sqrt(v);
    };
    struct Seg {
        double a, b, fa, fm, fb, whole;
    };
    auto simpson = [](double a, double b, double fa, double fm, double fb) { return (b - a) / 6 * (fa + 4 * fm + fb); };
    std::function<double(const Seg&, double, int)> rec = [&](const Seg& s, double eps, int depth) {
        double m = 0.5 * (s.a + s.b);
        double lm = 0.5 * (s.a + m), rm = 0.5 * (m + s.b);
        double flm = f(lm), frm = f(rm);
        double left = simpson(s.a, m, s.fa, flm, s.fm), right = simpson(m, s.b, s.fm, frm, s.fb);
        double delta = left + right - s.whole;
        if (depth >= max_depth || std::abs(delta) <= 15 * eps) return left + right + delta / 15;
        return rec({s.a, m, s.fa, flm, s.fm, left}, eps / 2, depth + 1) + rec({m, s.b, s.fm, frm, s.fb, right}, eps / 2, depth + 1);
    };
    double fa = f(c.t1), fb = f(c.t2), fm = f(0.5 * (c.t1 + c.t2));
    return rec({c.t1, c.t2, fa, fm, fb, simpson(c.t1, c.t2, fa, fm, fb)}, tol, 0);
}

Report verify_operators(const Metric& g, std::uint64_t seed, int fields) {
    const int n = g.dim();
    const Oracle& o = g.oracle();
    RandomField rf(g.system().coords, seed);
    Report r;
    r.title = "operators";
    Pairs div, div_low, curl_eq, curl_grad, div_curl, lap, lap_orth, phys, mag, dots, lapv;
    for (int k = 0; k < fields; ++k) {
        TensorField A = rf.tensor("A", parse_signature("u"));
        TensorField C = rf.tensor("C", parse_signature("d"));
        Expr f = rf.scalar();
        div.emplace_back(divergence(A, g), divergence_contracted(A, g));
        {
            TensorField d = covariant_derivative(C, g);
            std::vector<Expr> t;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    if (!g.ginv(i, j).is_zero()) t.push_back(g.ginv(i, j) * d.at({j, i}));
            div_low.emplace_back(divergence(C, g), normalize(sum(std::move(t))));
        }
        if (n == 3) {
            TensorField full = curl_full(C, g), red = curl(C, g);
            for (int i = 1; i <= 3; ++i) curl_eq.emplace_back(full.at({i}), red.at({i}));
            TensorField cg = curl(gradient(f, g), g);
            for (int i = 1; i <= 3; ++i) curl_grad.emplace_back(cg.at({i}), Expr());
            div_curl.emplace_back(divergence(red, g), Expr());
        }
        Expr L = laplacian(f, g);
        lap.emplace_back(L, divergence(gradient(f, g, Variance::Up), g));
        if (g.has_scale_factors()) {
            lap_orth.emplace_back(L, laplacian_orthogonal(f, g));
            TensorField T = rf.tensor("T", parse_signature(k % 2 ? "ud" : "uu"));
            auto pairs1 = detail::table_pairs(tensor_components(physical_components(T, g), g), T);
            auto pairs2 = detail::table_pairs(tensor_components(physical_components(C, g), g), C);
            phys.insert(phys.end(), pairs1.begin(), pairs1.end());
            phys.insert(phys.end(), pairs2.begin(), pairs2.end());
        }
        if (g.det_sign() > 0) {
            auto routes = magnitude_routes(A, g);
            mag.emplace_back(routes[0], routes[1]);
            mag.emplace_back(routes[0], routes[2]);
        } else {
            TensorField Ad = lower_index(A, 1, g);
            mag.emplace_back(dot(Ad, Ad, g), dot(A, A, g));
            mag.emplace_back(dot(Ad, Ad, g), dot(A, Ad, g));
        }
        TensorField B = rf.tensor("B", parse_signature("u"));
        TensorField Al = lower_index(A, 1, g), Bl = lower_index(B, 1, g);
        Expr d0 = dot(A, B, g);
        dots.emplace_back(d0, dot(Al, Bl, g));
        dots.emplace_back(d0, dot(Al, B, g));
        dots.emplace_back(d0, dot(A, Bl, g));
        if (k == 0) {
            TensorField lv = laplacian_vector(Al, g), lu = laplacian_vector(A, g);
            auto p = detail::table_pairs(lower_index(lu, 1, g), lv);
            lapv.insert(lapv.end(), p.begin(), p.end());
        }
    }
    add_pairs_check(r, o, "Voss-Weyl divergence = A^i_;i", div);
    add_pairs_check(r, o, "divergence of covariant input = g^ij A_j;i", div_low);
    if (n == 3) {
        add_pairs_check(r, o, "full curl = reduced curl", curl_eq);
        add_pairs_check(r, o, "curl grad f = 0", curl_grad);
        add_pairs_check(r, o, "div curl A = 0", div_curl);
    } else {
        r.notes.push_back("curl checks skipped: system is not 3D");
    }
    add_pairs_check(r, o, "Laplacian = div grad", lap);
    if (g.has_scale_factors()) {
        add_pairs_check(r, o, "general Laplacian = scale-factor Laplacian", lap_orth);
        add_pairs_check(r, o, "physical components round trip", phys);
    } else {
        r.notes.push_back("scale-factor checks skipped: metric has no real scale factors");
    }
    add_pairs_check(r, o, "magnitude routes agree", mag);
    if (g.det_sign() < 0) r.notes.push_back("indefinite metric: magnitude routes compared as squares");
    add_pairs_check(r, o, "dot product invariant across variance pairings", dots);
    add_pairs_check(r, o, "vector Laplacian commutes with lowering", lapv);
    if (n == 3 && g.has_scale_factors()) {
        Pairs area;
        for (int i = 1; i <= 3; ++i) area.emplace_back(area_element(g, i), area_element_orthogonal(g, i));
        Oracle ao(o.domain()
                      .with_interval({differential(g, 1), 0.5, 1.5})
                      .with_interval({differential(g, 2), 0.5, 1.5})
                      .with_interval({differential(g, 3), 0.5, 1.5}),
                  o.tol());
        add_pairs_check(r, ao, "area element reduces to h_j h_k du^j du^k", area);
    }
    return r;
}

}  // namespace tcalc
