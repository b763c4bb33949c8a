#include "tensorcalc/connection.hpp"

namespace tcalc {

namespace {

Expr d(const Metric& g, const Expr& e, int i) { return differentiate(e, g.coord(i)); }

void zero_diagnostics(const Metric& g, const TensorField& t, const std::string& label, Report& r) {
    std::vector<std::pair<Expr, Expr>> pairs;
    std::vector<Index> where;
    t.for_each([&](const Index& i, const Expr& e) {
        if (e.is_zero()) return;
        pairs.emplace_back(e, Expr());
        where.push_back(i);
    });
    if (pairs.empty()) return;
    auto v = g.oracle().compare_many(pairs);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].equal) continue;
        std::string idx;
        for (int x : where[k]) idx += std::to_string(x);
        r.notes.push_back(label + "[" + idx + "] is zero under the oracle but not structurally zero");
    }
}

}  // namespace

ChristoffelPair::ChristoffelPair(const Metric& g) : n_(g.dim()) {
    const int n = n_;
    pair_.assign(static_cast<std::size_t>(n * n), 0);
    std::size_t p = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) {
            pair_[static_cast<std::size_t>((i - 1) * n + (j - 1))] = p;
            pair_[static_cast<std::size_t>((j - 1) * n + (i - 1))] = p;
            ++p;
        }
    first_.assign(p * static_cast<std::size_t>(n), Expr());
    second_.assign(p * static_cast<std::size_t>(n), Expr());
    const Expr half = num(1, 2);
    // derivatives of the metric, computed once
    std::vector<Expr> dg(static_cast<std::size_t>(n * n * n));
    auto dgi = [&](int a, int b, int c) -> Expr& { return dg[static_cast<std::size_t>(((a - 1) * n + (b - 1)) * n + (c - 1))]; };
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b)
            for (int c = 1; c <= n; ++c) dgi(a, b, c) = dgi(b, a, c) = d(g, g.g(a, b), c);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int l = 1; l <= n; ++l)
                first_[slot(i, j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(l - 1)] =
                    normalize(half * (dgi(i, l, j) + dgi(j, l, i) - dgi(i, j, l)));
    for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j)
            for (int k = 1; k <= n; ++k) {
                std::vector<Expr> t;
                for (int l = 1; l <= n; ++l) {
                    const Expr& f = first(i, j, l);
                    if (!f.is_zero() && !g.ginv(k, l).is_zero()) t.push_back(g.ginv(k, l) * f);
                }
                second_[slot(i, j) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k - 1)] = normalize(sum(std::move(t)));
            }
}

std::size_t ChristoffelPair::slot(int i, int j) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw TensorError("Christoffel index out of range");
    return pair_[static_cast<std::size_t>((i - 1) * n_ + (j - 1))];
}

const ChristoffelPair& christoffel(const Metric& g) {
    return g.memo<ChristoffelPair>(Metric::kChristoffel, [&] { return ChristoffelPair(g); });
}

TensorField christoffel_first(const Metric& g) {
    const auto& c = christoffel(g);
    TensorField t("[ij,l]", parse_signature("ddd"), g.dim());
    t.fill([&](const Index& x) { return c.first(x[0], x[1], x[2]); });
    return t;
}

TensorField christoffel_second(const Metric& g) {
    const auto& c = christoffel(g);
    TensorField t("Gamma", parse_signature("udd"), g.dim());
    t.fill([&](const Index& x) { return c.second(x[0], x[1], x[2]); });
    return t;
}

std::vector<Expr> contracted_christoffel(const Metric& g) {
    Expr l = normalize(ln(g.sqrt_det()));
    std::vector<Expr> out;
    for (int i = 1; i <= g.dim(); ++i) out.push_back(d(g, l, i));
    return out;
}

TensorField orthogonal_christoffel(const Metric& g) {
    if (g.dim() != 3) throw GeometryError("orthogonal Christoffel formulas need a 3D system");
    if (!g.orthogonal()) throw GeometryError("orthogonal Christoffel formulas need an orthogonal metric");
    const auto& h = g.scale_factors();
    auto H = [&](int i) { return h[static_cast<std::size_t>(i - 1)]; };
    // h_{i,j}
    auto dh = [&](int i, int j) { return d(g, H(i), j); };
    TensorField t("Gamma", parse_signature("udd"), 3);
    t.fill([&](const Index& x) -> Expr {
        int k = x[0], i = x[1], j = x[2];
        if (i == k && j == k) return normalize(dh(k, k) / H(k));                        // G^1_11 = h_{1,1}/h_1
        if (i == k) return normalize(dh(k, j) / H(k));                                  // G^2_21 = h_{2,1}/h_2
        if (j == k) return normalize(dh(k, i) / H(k));                                  // G^2_12
        if (i == j) return normalize(neg(H(i) * dh(i, k) / power(H(k), Expr(2))));      // G^2_11 = -h_1 h_{1,2}/h_2^2
        return Expr();
    });
    return t;
}

std::int64_t christoffel_count(int n) {
    if (n < 1) throw TensorError("dimension must be positive");
    return static_cast<std::int64_t>(n) * n * (n + 1) / 2;
}

Report verify_metric_derivative_identities(const Metric& g) {
    const int n = g.dim();
    const auto& c = christoffel(g);
    const Oracle& o = g.oracle();
    Report r;
    r.title = "metric-derivative";
    std::vector<std::pair<Expr, Expr>> p1, p2, p3, p4, p5, p6;
    for_each_index(3, n, [&](const Index& x) {
        int i = x[0], j = x[1], k = x[2];
        p1.emplace_back(d(g, g.g(i, k), j), normalize(c.first(i, j, k) + c.first(j, k, i)));
        std::vector<Expr> a, b, e1, e2;
        for (int m = 1; m <= n; ++m)
            for (int q = 1; q <= n; ++q) {
                a.push_back(g.g(m, j) * g.g(q, i) * d(g, g.ginv(q, m), k));
                b.push_back(g.ginv(m, j) * g.ginv(i, q) * d(g, g.g(q, m), k));
            }
        p2.emplace_back(d(g, g.g(i, j), k), normalize(neg(sum(a))));
        p3.emplace_back(d(g, g.ginv(i, j), k), normalize(neg(sum(b))));
        for (int m = 1; m <= n; ++m) {
            e1.push_back(g.g(i, m) * d(g, g.ginv(m, j), k));
            e2.push_back(g.ginv(m, j) * d(g, g.g(i, m), k));
        }
        p4.emplace_back(normalize(sum(e1)), normalize(neg(sum(e2))));
    });
    r.add("d_j g_il = [ij,l] + [jl,i]", o.compare_all(p1), p1.size());
    r.add("d_k g_ij = -g_mj g_ni d_k g^nm", o.compare_all(p2), p2.size());
    r.add("d_k g^ij = -g^mj g^in d_k g_nm", o.compare_all(p3), p3.size());
    r.add("g_im d_k g^mj = -g^mj d_k g_im", o.compare_all(p4), p4.size());

    Expr inv_sqrt = normalize(power(g.sqrt_det(), Expr(-1)));
    for (int i = 1; i <= n; ++i) {
        std::vector<Expr> t;
        for (int j = 1; j <= n; ++j) t.push_back(inv_sqrt * d(g, normalize(g.sqrt_det() * g.ginv(i, j)), j));
        for (int k = 1; k <= n; ++k)
            for (int l = 1; l <= n; ++l) t.push_back(g.ginv(k, l) * c.second(i, k, l));
        p5.emplace_back(normalize(sum(t)), Expr());
    }
    r.add("(1/sqrt g) d_j(sqrt g g^ij) + g^kl Gamma^i_kl = 0", o.compare_all(p5), p5.size());

    for_each_index(4, n, [&](const Index& x) {
        int i = x[0], k = x[1], l = x[2], j = x[3];
        std::vector<Expr> t;
        for (int a = 1; a <= n; ++a) {
            t.push_back(g.g(l, a) * d(g, c.second(a, i, k), j));
            t.push_back(c.second(a, i, k) * (c.first(l, j, a) + c.first(a, j, l)));
        }
        p6.emplace_back(d(g, c.first(i, k, l), j), normalize(sum(t)));
    });
    r.add("d_j[ik,l] = g_la d_j Gamma^a_ik + Gamma^a_ik([lj,a] + [aj,l])", o.compare_all(p6), p6.size());
    return r;
}

Report verify_christoffel(const Metric& g) {
    const int n = g.dim();
    const auto& c = christoffel(g);
    const Oracle& o = g.oracle();
    Report r;
    r.title = "christoffel";

    std::vector<std::pair<Expr, Expr>> low, sym;
    for_each_index(3, n, [&](const Index& x) {
        int i = x[0], j = x[1], m = x[2];
        std::vector<Expr> t;
        for (int k = 1; k <= n; ++k) t.push_back(g.g(k, m) * c.second(k, i, j));
        low.emplace_back(normalize(sum(t)), c.first(i, j, m));
    });
    r.add("g_km Gamma^k_ij = [ij,m]", o.compare_all(low), low.size());

    bool symmetric = true;
    for_each_index(3, n, [&](const Index& x) {
        if (!(c.first(x[0], x[1], x[2]) == c.first(x[1], x[0], x[2]))) symmetric = false;
        if (!(c.second(x[0], x[1], x[2]) == c.second(x[0], x[2], x[1]))) symmetric = false;
    });
    r.add("symmetric in the paired indices", symmetric, static_cast<std::size_t>(n * n * n));

    auto contracted = contracted_christoffel(g);
    std::vector<std::pair<Expr, Expr>> cc;
    for (int i = 1; i <= n; ++i) {
        std::vector<Expr> t;
        for (int j = 1; j <= n; ++j) t.push_back(c.second(j, i, j));
        cc.emplace_back(normalize(sum(t)), contracted[static_cast<std::size_t>(i - 1)]);
    }
    r.add("Gamma^j_ij = d_i ln sqrt g", o.compare_all(cc), cc.size());

    if (n == 3 && g.orthogonal() && g.has_scale_factors()) {
        TensorField h = orthogonal_christoffel(g);
        std::vector<std::pair<Expr, Expr>> hp;
        for_each_index(3, 3, [&](const Index& x) { hp.emplace_back(h.at(x), c.second(x[0], x[1], x[2])); });
        r.add("orthogonal h-formulas agree", o.compare_all(hp), hp.size());
    }

    bool constant = true;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (!free_symbols(g.g(i, j)).empty()) constant = false;
    if (constant) {
        bool zero = christoffel_first(g).all_zero() && christoffel_second(g).all_zero();
        r.add("constant metric gives identically zero symbols", zero, static_cast<std::size_t>(2 * n * n * n));
    }

    zero_diagnostics(g, christoffel_first(g), "[ij,l]", r);
    zero_diagnostics(g, christoffel_second(g), "Gamma", r);
    r.append(verify_metric_derivative_identities(g));
    return r;
}

}  // namespace tcalc
