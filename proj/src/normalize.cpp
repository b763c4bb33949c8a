#include "tensorcalc/expr.hpp"

#include "expr_internal.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace tcalc {

namespace {

using detail::make_node;

constexpr std::size_t kExpandLimit = 512;
constexpr std::int64_t kExpandPower = 4;

const Expr kOne{Number(1)};

bool small_positive_int(const Expr& x) {
    return x.is_constant() && x.value().is_integer() && x.value().num() > 1 && x.value().num() <= kExpandPower;
}

Expr sum_canon(const std::vector<Expr>& terms);
Expr product_canon(const std::vector<Expr>& factors);
Expr power_canon(const Expr& b, const Expr& x);
Expr fn_canon(Fn f, const Expr& a);

Expr scaled(const Number& c, const Expr& mono) {
    if (mono.is_one()) return Expr(c);
    if (c.is_one()) return mono;
    std::vector<Expr> a;
    a.emplace_back(c);
    if (mono.kind() == Kind::Product)
        a.insert(a.end(), mono.args().begin(), mono.args().end());
    else
        a.push_back(mono);
    return make_node(Kind::Product, std::move(a), true, Fn::Sin);
}

using TermMap = std::map<Expr, Number, ExprLess>;

void add_term(TermMap& acc, const Expr& t) {
    Number c;
    Expr m;
    detail::split_term(t, c, m);
    auto [it, fresh] = acc.emplace(m, c);
    if (!fresh) it->second += c;
}

// c1*M*sin(u)^2 + c2*M*cos(u)^2 -> c2*M + (c1 - c2)*M*sin(u)^2
bool pythagoras_step(TermMap& acc) {
    for (auto& [mono, coef] : acc) {
        if (coef.is_zero()) continue;
        std::vector<Expr> factors;
        if (mono.kind() == Kind::Product)
            factors.assign(mono.args().begin(), mono.args().end());
        else
            factors.push_back(mono);
        for (const auto& f : factors) {
            const Expr& b = detail::base_of(f);
            const Expr& x = detail::exponent_of(f);
            if (b.kind() != Kind::Function || b.fn() != Fn::Sin) continue;
            if (!x.is_constant() || !x.value().is_integer() || x.value().num() < 2) continue;
            Expr stripped = product_canon({mono, power_canon(b, Expr(Number(-2)))});
            Expr partner = product_canon({stripped, power_canon(apply(Fn::Cos, b.arg()), Expr(Number(2)))});
            Number pc, sc;
            Expr pm, sm;
            detail::split_term(partner, pc, pm);  // pc == sc
            detail::split_term(stripped, sc, sm);
            auto it = acc.find(pm);
            if (it == acc.end() || it->second.is_zero()) continue;
            Number c2 = it->second;
            it->second = Number(0);
            coef = coef - c2 / sc;
            add_term(acc, scaled(c2, sm));
            return true;
        }
    }
    return false;
}

Expr sum_canon(const std::vector<Expr>& terms) {
    TermMap acc;
    for (const auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& s : t.args()) add_term(acc, s);
        } else {
            add_term(acc, t);
        }
    }
    for (int guard = 0; guard < 1000 && pythagoras_step(acc); ++guard) {
    }
    std::vector<Expr> out;
    for (const auto& [m, c] : acc)
        if (!c.is_zero()) out.push_back(scaled(c, m));
    if (out.empty()) return Expr(Number(0));
    if (out.size() == 1) return out[0];
    std::stable_sort(out.begin(), out.end(), detail::term_less);
    return make_node(Kind::Sum, std::move(out), true, Fn::Sin);
}

struct Collected {
    Number coef{1};
    std::map<Expr, Expr, ExprLess> powers;
    std::vector<Expr> sums;

    void add_power(const Expr& b, const Expr& x) {
        auto [it, fresh] = powers.emplace(b, x);
        if (!fresh) it->second = sum_canon({it->second, x});
    }

    void take(const Expr& f) {
        switch (f.kind()) {
            case Kind::Constant: coef *= f.value(); break;
            case Kind::Product:
                for (const auto& a : f.args()) take(a);
                break;
            case Kind::Sum: sums.push_back(f); break;
            case Kind::Power:
                if (f.base().kind() == Kind::Sum && small_positive_int(f.exponent())) {
                    for (std::int64_t i = 0; i < f.exponent().value().num(); ++i) sums.push_back(f.base());
                } else {
                    add_power(f.base(), f.exponent());
                }
                break;
            default: add_power(f, kOne); break;
        }
    }
};

Expr product_canon(const std::vector<Expr>& factors) {
    std::vector<Expr> work = factors;
    Collected c;
    std::vector<Expr> built;
    for (int round = 0; round < 8; ++round) {
        c = Collected{};
        for (const auto& f : work) c.take(f);
        if (c.coef.is_zero()) return Expr(Number(0));
        // a sum already present as a base merges with it instead of expanding
        std::vector<Expr> keep;
        for (const auto& s : c.sums) {
            if (c.powers.count(s))
                c.add_power(s, kOne);
            else
                keep.push_back(s);
        }
        c.sums = std::move(keep);
        built.clear();
        bool again = false;
        for (const auto& [b, x] : c.powers) {
            Expr f;
            if (b.kind() == Kind::Sum && (x.is_one() || small_positive_int(x))) {
                for (std::int64_t i = 0; i < (x.is_one() ? 1 : x.value().num()); ++i) c.sums.push_back(b);
                continue;
            }
            if (b.kind() == Kind::Sum)
                f = x.is_zero() ? kOne : make_node(Kind::Power, {b, x}, true, Fn::Sin);
            else
                f = power_canon(b, x);
            if (f.kind() == Kind::Constant || f.kind() == Kind::Product || (f.kind() == Kind::Sum && b.kind() != Kind::Sum))
                again = true;
            built.push_back(f);
        }
        if (!again) break;
        work = built;
        work.emplace_back(c.coef);
        work.insert(work.end(), c.sums.begin(), c.sums.end());
    }
    // constants folded during the last round
    std::vector<Expr> plain;
    Number coef = c.coef;
    for (const auto& f : built) {
        if (f.kind() == Kind::Constant)
            coef *= f.value();
        else if (!f.is_one())
            plain.push_back(f);
    }
    if (coef.is_zero()) return Expr(Number(0));

    std::vector<Expr> sums = c.sums;
    std::sort(sums.begin(), sums.end(), [](const Expr& a, const Expr& b) { return a.args().size() < b.args().size(); });
    std::size_t total = 1;
    std::size_t n_expand = 0;
    for (; n_expand < sums.size(); ++n_expand) {
        std::size_t next = total * sums[n_expand].args().size();
        if (next > kExpandLimit) break;
        total = next;
    }
    if (n_expand < sums.size()) n_expand = 0;  // all or nothing keeps the result stable
    std::map<Expr, std::int64_t, ExprLess> atomic;
    for (std::size_t i = n_expand; i < sums.size(); ++i) ++atomic[sums[i]];
    for (const auto& [s, k] : atomic)
        plain.push_back(k == 1 ? s : make_node(Kind::Power, {s, Expr(Number(k))}, true, Fn::Sin));

    std::stable_sort(plain.begin(), plain.end(), detail::factor_less);
    Expr head;
    if (plain.empty()) {
        head = Expr(coef);
    } else if (plain.size() == 1 && coef.is_one()) {
        head = plain[0];
    } else {
        std::vector<Expr> a;
        if (!coef.is_one()) a.emplace_back(coef);
        a.insert(a.end(), plain.begin(), plain.end());
        head = make_node(Kind::Product, std::move(a), true, Fn::Sin);
    }
    if (n_expand == 0) return head;

    std::vector<Expr> terms{head};
    for (std::size_t i = 0; i < n_expand; ++i) {
        std::vector<Expr> next;
        next.reserve(terms.size() * sums[i].args().size());
        for (const auto& t : terms)
            for (const auto& s : sums[i].args()) next.push_back(product_canon({t, s}));
        terms = std::move(next);
    }
    return sum_canon(terms);
}

Expr power_canon(const Expr& b, const Expr& x) {
    if (x.is_constant()) {
        const Number& e = x.value();
        if (e.is_zero()) return kOne;
        if (e.is_one()) return b;
        if (b.is_constant()) {
            Number out;
            if (b.value().try_pow(e, out)) return Expr(out);
            return make_node(Kind::Power, {b, x}, true, Fn::Sin);
        }
        switch (b.kind()) {
            case Kind::Power: return power_canon(b.base(), product_canon({b.exponent(), x}));
            case Kind::Product: {
                std::vector<Expr> parts;
                for (const auto& f : b.args()) parts.push_back(power_canon(f, x));
                return product_canon(parts);
            }
            case Kind::Sum:
                if (small_positive_int(x)) return product_canon(std::vector<Expr>(static_cast<std::size_t>(e.num()), b));
                break;
            case Kind::Function:
                if (b.fn() == Fn::Exp) return fn_canon(Fn::Exp, product_canon({b.arg(), x}));
                break;
            default: break;
        }
        return make_node(Kind::Power, {b, x}, true, Fn::Sin);
    }
    if (b.is_one()) return kOne;
    if (b.kind() == Kind::Power) return power_canon(b.base(), product_canon({b.exponent(), x}));
    return make_node(Kind::Power, {b, x}, true, Fn::Sin);
}

bool negative_coefficient(const Expr& a) {
    if (a.is_constant()) return a.value().is_negative();
    return a.kind() == Kind::Product && a.args()[0].is_constant() && a.args()[0].value().is_negative();
}

Expr fn_canon(Fn f, const Expr& a) {
    if (a.is_constant() && a.value().is_exact()) {
        if (a.value().is_zero()) {
            if (f == Fn::Sin || f == Fn::Tan) return Expr(Number(0));
            if (f == Fn::Cos || f == Fn::Exp) return kOne;
        }
        if (a.value().is_one() && f == Fn::Ln) return Expr(Number(0));
    }
    switch (f) {
        case Fn::Ln:
            if (a.kind() == Kind::Function && a.fn() == Fn::Exp) return a.arg();
            if (a.kind() == Kind::Power && a.exponent().is_constant())
                return product_canon({a.exponent(), fn_canon(Fn::Ln, a.base())});
            if (a.kind() == Kind::Product && !negative_coefficient(a)) {
                std::vector<Expr> parts;
                for (const auto& x : a.args()) parts.push_back(fn_canon(Fn::Ln, x));
                return sum_canon(parts);
            }
            break;
        case Fn::Exp:
            if (a.kind() == Kind::Function && a.fn() == Fn::Ln) return a.arg();
            break;
        case Fn::Sin:
        case Fn::Tan:
        case Fn::Cot:
            if (negative_coefficient(a)) return product_canon({Expr(Number(-1)), fn_canon(f, product_canon({Expr(Number(-1)), a}))});
            break;
        case Fn::Cos:
            if (negative_coefficient(a)) return fn_canon(f, product_canon({Expr(Number(-1)), a}));
            break;
    }
    return make_node(Kind::Function, {a}, true, f);
}

}  // namespace

Expr normalize(const Expr& e) {
    std::unordered_map<const Node*, Expr> memo;
    auto go = [&](auto& self, const Expr& x) -> Expr {
        if (x.is_normalized()) return x;
        auto it = memo.find(x.id());
        if (it != memo.end()) return it->second;
        std::vector<Expr> a;
        a.reserve(x.args().size());
        for (const auto& c : x.args()) a.push_back(self(self, c));
        Expr r;
        switch (x.kind()) {
            case Kind::Sum: r = sum_canon(a); break;
            case Kind::Product: r = product_canon(a); break;
            case Kind::Power: r = power_canon(a[0], a[1]); break;
            case Kind::Function: r = fn_canon(x.fn(), a[0]); break;
            default: r = x; break;
        }
        memo.emplace(x.id(), r);
        return r;
    };
    return go(go, e);
}

}  // namespace tcalc
