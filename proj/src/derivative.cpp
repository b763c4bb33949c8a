#include "tensorcalc/derivative.hpp"

#include "check_helpers.hpp"
#include "tensorcalc/random_field.hpp"
#include "tensorcalc/special_tensors.hpp"

namespace tcalc {

namespace {

using detail::add_table_check;
using detail::add_zero_check;
using detail::Pairs;
using detail::pd;

void check_dim(const TensorField& t, const Metric& g) {
    if (t.dim() != g.dim())
        throw TensorError("tensor of dimension " + std::to_string(t.dim()) + " on a " + std::to_string(g.dim()) + "D system");
}

std::size_t slot_index(const TensorField& t, int slot) {
    if (slot < 1 || slot > t.rank()) throw TensorError("slot " + std::to_string(slot) + " out of range 1.." + std::to_string(t.rank()));
    return static_cast<std::size_t>(slot - 1);
}

}  // namespace

void validate_curve(const Curve& c, const Metric& g) {
    if (static_cast<int>(c.u.size()) != g.dim())
        throw GeometryError("curve has " + std::to_string(c.u.size()) + " components on a " + std::to_string(g.dim()) + "D system");
    if (!(c.t1 < c.t2)) throw GeometryError("curve interval must satisfy t1 < t2");
    for (const auto& e : c.u)
        for (const auto& s : free_symbols(e))
            if (s != c.param) throw GeometryError("curve component depends on '" + s + "', not only on " + c.param);
    constexpr int kSteps = 20;
    for (int s = 0; s <= kSteps; ++s) {
        double t = c.t1 + (c.t2 - c.t1) * s / kSteps;
        Point p;
        p.set(c.param, t);
        for (int i = 1; i <= g.dim(); ++i) {
            double v = evaluate(c.u[static_cast<std::size_t>(i - 1)], p);
            for (const auto& iv : g.system().domain.intervals())
                if (iv.name == g.coord(i) && (v < iv.lo || v > iv.hi))
                    throw GeometryError("curve leaves the sample domain: " + iv.name + " = " + std::to_string(v) + " at " +
                                        c.param + " = " + std::to_string(t));
        }
    }
}

Oracle curve_oracle(const Curve& c, double tol) { return Oracle(SampleDomain({{c.param, c.t1, c.t2}}), tol); }

TensorField covariant_derivative(const TensorField& t, const Metric& g) {
    check_dim(t, g);
    const int n = g.dim();
    const auto& G = christoffel(g);
    Signature sig = t.signature();
    sig.push_back(Variance::Down);
    TensorField out(t.name() + ";", sig, n, t.weight());
    const auto r = static_cast<std::size_t>(t.rank());
    out.fill([&](const Index& x) {
        Index a(x.begin(), x.end() - 1);
        const int q = x.back();
        std::vector<Expr> terms{pd(g, t.at(a), q)};
        for (std::size_t s = 0; s < r; ++s) {
            const int orig = a[s];
            for (int b = 1; b <= n; ++b) {
                a[s] = b;
                const Expr& comp = t.at(a);
                if (comp.is_zero()) continue;
                if (sig[s] == Variance::Up) {
                    const Expr& c = G.second(orig, b, q);
                    if (!c.is_zero()) terms.push_back(c * comp);
                } else {
                    const Expr& c = G.second(b, orig, q);
                    if (!c.is_zero()) terms.push_back(neg(c * comp));
                }
            }
            a[s] = orig;
        }
        if (t.weight() != 0) {
            const Expr& comp = t.at(a);
            for (int b = 1; b <= n; ++b) {
                const Expr& c = G.second(b, b, q);
                if (!c.is_zero() && !comp.is_zero()) terms.push_back(Expr(-t.weight()) * comp * c);
            }
        }
        return normalize(sum(std::move(terms)));
    });
    return out;
}

TensorField contravariant_derivative(const TensorField& t, const Metric& g) {
    return raise_index(covariant_derivative(t, g), t.rank() + 1, g).rename(t.name() + "^;");
}

TensorField second_covariant_derivative(const TensorField& t, const Metric& g, DiffOrder order) {
    if (t.rank() != 1) throw TensorError("second covariant derivative needs a rank-1 field");
    TensorField d2 = covariant_derivative(covariant_derivative(t, g), g);
    if (order == DiffOrder::JK) return d2;
    TensorField out = d2;
    out.fill([&](const Index& x) { return d2.at({x[0], x[2], x[1]}); });
    return out;
}

TensorField second_covariant_explicit(const TensorField& t, const Metric& g, DiffOrder order) {
    if (t.rank() != 1) throw TensorError("second covariant derivative needs a rank-1 field");
    check_dim(t, g);
    const int n = g.dim();
    const auto& G = christoffel(g);
    auto A = [&](int i) -> const Expr& { return t.at({i}); };
    Signature sig = t.signature();
    sig.push_back(Variance::Down);
    sig.push_back(Variance::Down);
    TensorField out(t.name() + ";;", sig, n, t.weight());
    const bool up = t.signature()[0] == Variance::Up;
    out.fill([&](const Index& x) {
        const int i = x[0];
        const int j = order == DiffOrder::JK ? x[1] : x[2];
        const int k = order == DiffOrder::JK ? x[2] : x[1];
        std::vector<Expr> terms{pd(g, pd(g, A(i), j), k)};
        for (int a = 1; a <= n; ++a) {
            if (up) {
                terms.push_back(G.second(i, j, a) * pd(g, A(a), k));
                terms.push_back(G.second(i, k, a) * pd(g, A(a), j));
                terms.push_back(neg(G.second(a, j, k) * pd(g, A(i), a)));
                std::vector<Expr> in{pd(g, G.second(i, j, a), k)};
                for (int b = 1; b <= n; ++b) {
                    in.push_back(neg(G.second(b, j, k) * G.second(i, b, a)));
                    in.push_back(G.second(i, k, b) * G.second(b, j, a));
                }
                terms.push_back(A(a) * sum(std::move(in)));
            } else {
                terms.push_back(neg(G.second(a, i, j) * pd(g, A(a), k)));
                terms.push_back(neg(G.second(a, i, k) * pd(g, A(a), j)));
                terms.push_back(neg(G.second(a, j, k) * pd(g, A(i), a)));
                std::vector<Expr> in{pd(g, G.second(a, i, j), k)};
                for (int b = 1; b <= n; ++b) {
                    in.push_back(neg(G.second(a, i, b) * G.second(b, j, k)));
                    in.push_back(neg(G.second(b, i, k) * G.second(a, b, j)));
                }
                terms.push_back(neg(A(a) * sum(std::move(in))));
            }
        }
        return normalize(sum(std::move(terms)));
    });
    return out;
}

TensorField second_contravariant_literal(const TensorField& t, const Metric& g) {
    if (t.rank() != 1 || t.signature()[0] != Variance::Up) throw TensorError("needs a contravariant vector");
    check_dim(t, g);
    const int n = g.dim();
    const auto& G = christoffel(g);
    auto A = [&](int i) -> const Expr& { return t.at({i}); };
    TensorField out(t.name() + ";;", parse_signature("udd"), n, t.weight());
    out.fill([&](const Index& x) {
        const int i = x[0], j = x[1], k = x[2];
        std::vector<Expr> terms{pd(g, pd(g, A(i), j), k)};
        for (int a = 1; a <= n; ++a) {
            terms.push_back(G.second(i, k, a) * pd(g, A(a), j));
            terms.push_back(neg(G.second(a, j, k) * pd(g, A(i), a)));
            terms.push_back(G.second(i, j, a) * pd(g, A(a), k));
            std::vector<Expr> in{pd(g, G.second(i, k, a), j)};
            for (int b = 1; b <= n; ++b) {
                in.push_back(neg(G.second(b, j, k) * G.second(i, b, a)));
                in.push_back(G.second(i, j, b) * G.second(b, k, a));
            }
            terms.push_back(A(a) * sum(std::move(in)));
        }
        return normalize(sum(std::move(terms)));
    });
    return out;
}

namespace {

TensorField move_index(const TensorField& t, int slot, const Metric& g, Variance from) {
    check_dim(t, g);
    const std::size_t s = slot_index(t, slot);
    if (t.signature()[s] != from)
        throw TensorError(std::string("slot ") + std::to_string(slot) + " is not " + (from == Variance::Up ? "contravariant" : "covariant"));
    Signature sig = t.signature();
    sig[s] = from == Variance::Up ? Variance::Down : Variance::Up;
    TensorField out(t.name(), sig, t.dim(), t.weight());
    out.fill([&](const Index& x) {
        Index a = x;
        std::vector<Expr> terms;
        for (int b = 1; b <= t.dim(); ++b) {
            a[s] = b;
            const Expr& m = from == Variance::Up ? g.g(x[s], b) : g.ginv(x[s], b);
            if (!m.is_zero() && !t.at(a).is_zero()) terms.push_back(m * t.at(a));
        }
        return normalize(sum(std::move(terms)));
    });
    return out;
}

}  // namespace

TensorField raise_index(const TensorField& t, int slot, const Metric& g) { return move_index(t, slot, g, Variance::Down); }

TensorField lower_index(const TensorField& t, int slot, const Metric& g) { return move_index(t, slot, g, Variance::Up); }

TensorField contract(const TensorField& t, int slot_a, int slot_b) {
    const std::size_t a = slot_index(t, slot_a), b = slot_index(t, slot_b);
    if (a == b) throw TensorError("cannot contract a slot with itself");
    if (t.signature()[a] == t.signature()[b]) throw TensorError("contracted slots must have opposite variance");
    Signature sig;
    for (std::size_t s = 0; s < t.signature().size(); ++s)
        if (s != a && s != b) sig.push_back(t.signature()[s]);
    TensorField out(t.name(), sig, t.dim(), t.weight());
    out.fill([&](const Index& x) {
        Index full(t.signature().size());
        for (std::size_t s = 0, k = 0; s < full.size(); ++s)
            if (s != a && s != b) full[s] = x[k++];
        std::vector<Expr> terms;
        for (int m = 1; m <= t.dim(); ++m) {
            full[a] = full[b] = m;
            terms.push_back(t.at(full));
        }
        return normalize(sum(std::move(terms)));
    });
    return out;
}

TensorField absolute_derivative(const TensorField& t, const Curve& c, const Metric& g) {
    validate_curve(c, g);
    check_dim(t, g);
    const int n = g.dim();
    Substitution sub;
    for (int i = 1; i <= n; ++i) sub.emplace_back(g.coord(i), c.u[static_cast<std::size_t>(i - 1)]);
    std::vector<Expr> du;
    for (const auto& e : c.u) du.push_back(differentiate(e, c.param));
    TensorField d = covariant_derivative(t, g);
    TensorField out("d" + t.name() + "/d" + c.param, t.signature(), n, t.weight());
    out.fill([&](const Index& x) {
        Index a = x;
        a.push_back(1);
        std::vector<Expr> terms;
        for (int r = 1; r <= n; ++r) {
            a.back() = r;
            const Expr& v = du[static_cast<std::size_t>(r - 1)];
            if (!v.is_zero()) terms.push_back(substitute(d.at(a), sub) * v);
        }
        return normalize(sum(std::move(terms)));
    });
    return out;
}

TensorField metric_tensor(const Metric& g, Variance v) {
    TensorField t(v == Variance::Down ? "g" : "g^", {v, v}, g.dim());
    t.fill([&](const Index& x) { return v == Variance::Down ? g.g(x[0], x[1]) : g.ginv(x[0], x[1]); });
    return t;
}

TensorField delta_tensor(int n) {
    TensorField t("delta", parse_signature("ud"), n);
    t.fill([](const Index& x) { return Expr(kronecker(x[0], x[1])); });
    return t;
}

Report verify_ricci_theorem(const Metric& g) {
    Report r;
    r.title = "ricci-theorem";
    add_zero_check(r, g, "g_ij;k = 0", covariant_derivative(metric_tensor(g, Variance::Down), g));
    add_zero_check(r, g, "g^ij;k = 0", covariant_derivative(metric_tensor(g, Variance::Up), g));
    add_zero_check(r, g, "delta^i_j;k = 0", covariant_derivative(delta_tensor(g.dim()), g));
    return r;
}

Report verify_derivative_properties(const Metric& g, std::uint64_t seed) {
    const int n = g.dim();
    RandomField rf(g.system().coords, seed);
    Report r;
    r.title = "covariant-derivative";

    TensorField A = rf.tensor("A", parse_signature("u"));
    TensorField B = rf.tensor("B", parse_signature("u"));
    TensorField C = rf.tensor("C", parse_signature("d"));
    Expr a = rf.scalar(), b = rf.scalar();

    Expr ca(3), cb = num(-2, 5);
    add_table_check(r, g, "(aA + bB);i = aA;i + bB;i", covariant_derivative(add(scale(ca, A), scale(cb, B)), g),
                    add(scale(ca, covariant_derivative(A, g)), scale(cb, covariant_derivative(B, g))));

    {
        TensorField AC = covariant_derivative(outer(A, C), g);
        TensorField dA = covariant_derivative(A, g), dC = covariant_derivative(C, g);
        TensorField rhs(AC.name(), AC.signature(), n);
        rhs.fill([&](const Index& x) {
            return normalize(dA.at({x[0], x[2]}) * C.at({x[1]}) + A.at({x[0]}) * dC.at({x[1], x[2]}));
        });
        add_table_check(r, g, "(A o C);k = A;k o C + A o C;k", AC, rhs);
    }

    add_table_check(r, g, "(g_ik A^k);j = g_ik A^k;j", covariant_derivative(lower_index(A, 1, g), g),
                    lower_index(covariant_derivative(A, g), 1, g));

    {
        TensorField grad("grad", parse_signature("d"), n);
        grad.fill([&](const Index& x) { return pd(g, a, x[0]); });
        TensorField h = covariant_derivative(grad, g);
        TensorField ht = h;
        ht.fill([&](const Index& x) { return h.at({x[1], x[0]}); });
        add_table_check(r, g, "A_i = d_i f gives A_i;j = A_j;i", h, ht);
        TensorField f = TensorField::scalar("f", a, n);
        add_table_check(r, g, "f;i = d_i f", covariant_derivative(f, g), grad);
    }

    {
        TensorField T = rf.tensor("T", parse_signature("udd"));
        add_table_check(r, g, "contraction commutes with ;", contract(covariant_derivative(T, g), 1, 2),
                        covariant_derivative(contract(T, 1, 2), g));
    }

    {
        TensorField rt = TensorField::scalar("sqrt g", g.sqrt_det(), n, 1);
        add_zero_check(r, g, "relative scalar sqrt g (w = 1) has zero derivative", covariant_derivative(rt, g));
        add_zero_check(r, g, "relative eps (w = -1) has zero derivative", covariant_derivative(relative_epsilon(n, Variance::Down), g));
        TensorField w0 = covariant_derivative(TensorField(C).set_weight(0), g);
        add_table_check(r, g, "weight 0 reduces to the plain rule", w0, covariant_derivative(C, g));
        add_table_check(r, g, "raise after lower is the identity", raise_index(lower_index(A, 1, g), 1, g), A);
    }

    for (DiffOrder o : {DiffOrder::JK, DiffOrder::KJ}) {
        const char* tag = o == DiffOrder::JK ? "jk" : "kj";
        add_table_check(r, g, std::string("A_i;") + tag + " expansion", second_covariant_derivative(C, g, o),
                        second_covariant_explicit(C, g, o));
        add_table_check(r, g, std::string("A^i;") + tag + " expansion", second_covariant_derivative(A, g, o),
                        second_covariant_explicit(A, g, o));
    }
    add_table_check(r, g, "literal A^i;jk expansion equals the kj order", second_contravariant_literal(A, g),
                    second_covariant_derivative(A, g, DiffOrder::KJ));

    TensorField Craise = contravariant_derivative(TensorField::scalar("f", b, n), g);
    {
        TensorField direct("grad^", parse_signature("u"), n);
        direct.fill([&](const Index& x) {
            std::vector<Expr> t;
            for (int k = 1; k <= n; ++k) t.push_back(g.ginv(x[0], k) * pd(g, b, k));
            return normalize(sum(std::move(t)));
        });
        add_table_check(r, g, "f^;i = g^ik d_k f", Craise, direct);
    }

    if (g.has_map()) {
        auto E = basis_vectors(g);
        const auto& G = christoffel(g);
        Pairs p;
        const auto m = E.empty() ? 0 : E[0].size();
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (std::size_t c = 0; c < m; ++c) {
                    std::vector<Expr> t{pd(g, E[static_cast<std::size_t>(i - 1)][c], j)};
                    for (int k = 1; k <= n; ++k) t.push_back(neg(G.second(k, i, j) * E[static_cast<std::size_t>(k - 1)][c]));
                    p.emplace_back(normalize(sum(std::move(t))), Expr());
                }
        r.add("d_j E_i - Gamma^k_ij E_k = 0", g.oracle().compare_all(p), p.size());
    }
    r.append(verify_ricci_theorem(g));
    return r;
}

}  // namespace tcalc
