#include "tensorcalc/expr.hpp"

#include "expr_internal.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

namespace tcalc {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

const Expr& zero_expr() {
    static const Expr z(Number(0));
    return z;
}

}  // namespace

std::string_view fn_name(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Tan: return "tan";
        case Fn::Cot: return "cot";
        case Fn::Ln: return "ln";
        case Fn::Exp: return "exp";
    }
    return "?";
}

std::uint64_t symbol_bit(std::string_view name) {
    return std::uint64_t{1} << (std::hash<std::string_view>{}(name) % 64);
}

namespace detail {

Expr make_node(Kind k, std::vector<Expr> args, bool normalized, Fn f) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->fn = f;
    n->normalized = normalized;
    std::size_t h = static_cast<std::size_t>(k) * 1000003u + static_cast<std::size_t>(f);
    std::uint64_t mask = 0;
    for (const auto& a : args) {
        h = mix(h, a.hash());
        mask |= a.symbol_mask();
    }
    n->hash = h;
    n->symbols = mask;
    n->args = std::move(args);
    return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr with_flag(const Expr& e) {
    if (e.is_normalized()) return e;
    std::vector<Expr> a(e.args().begin(), e.args().end());
    return make_node(e.kind(), std::move(a), true, e.fn());
}

const Expr& exponent_of(const Expr& e) {
    static const Expr one(Number(1));
    return e.kind() == Kind::Power ? e.exponent() : one;
}

const Expr& base_of(const Expr& e) { return e.kind() == Kind::Power ? e.base() : e; }

bool factor_less(const Expr& a, const Expr& b) {
    int c = compare(base_of(a), base_of(b));
    if (c != 0) return c < 0;
    return compare(exponent_of(a), exponent_of(b)) < 0;
}

void split_term(const Expr& t, Number& coef, Expr& mono) {
    if (t.kind() == Kind::Constant) {
        coef = t.value();
        mono = Expr(Number(1));
        return;
    }
    if (t.kind() == Kind::Product && t.args()[0].kind() == Kind::Constant) {
        coef = t.args()[0].value();
        auto a = t.args();
        if (a.size() == 2) {
            mono = a[1];
        } else {
            mono = make_node(Kind::Product, std::vector<Expr>(a.begin() + 1, a.end()), t.is_normalized(), Fn::Sin);
        }
        return;
    }
    coef = Number(1);
    mono = t;
}

bool term_less(const Expr& a, const Expr& b) {
    bool ca = a.is_constant(), cb = b.is_constant();
    if (ca != cb) return cb;
    if (ca) return compare(a.value(), b.value()) < 0;
    Number na, nb;
    Expr ma, mb;
    split_term(a, na, ma);
    split_term(b, nb, mb);
    int c = compare(ma, mb);
    if (c != 0) return c < 0;
    return compare(na, nb) < 0;
}

}  // namespace detail

using detail::make_node;

Expr::Expr() : Expr(zero_expr()) {}

Expr::Expr(const Number& n) {
    auto p = std::make_shared<Node>();
    p->kind = Kind::Constant;
    p->value = n;
    p->normalized = true;
    p->hash = mix(17, n.hash());
    node_ = std::move(p);
}

Expr Expr::symbol(std::string name) {
    auto p = std::make_shared<Node>();
    p->kind = Kind::Symbol;
    p->normalized = true;
    p->hash = mix(29, std::hash<std::string>{}(name));
    p->symbols = symbol_bit(name);
    p->name = std::move(name);
    return Expr(std::shared_ptr<const Node>(std::move(p)));
}

Kind Expr::kind() const { return node_->kind; }
const Number& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
Fn Expr::fn() const { return node_->fn; }
std::span<const Expr> Expr::args() const { return node_->args; }
std::size_t Expr::hash() const { return node_->hash; }
std::uint64_t Expr::symbol_mask() const { return node_->symbols; }
bool Expr::is_normalized() const { return node_->normalized; }
bool Expr::is_zero() const { return kind() == Kind::Constant && value().is_zero(); }
bool Expr::is_one() const { return kind() == Kind::Constant && value().is_one(); }
bool Expr::is_symbol(std::string_view n) const { return kind() == Kind::Symbol && name() == n; }

int compare(const Expr& a, const Expr& b) {
    if (a.id() == b.id()) return 0;
    if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
    switch (a.kind()) {
        case Kind::Constant: return compare(a.value(), b.value());
        case Kind::Symbol: {
            int c = a.name().compare(b.name());
            return c < 0 ? -1 : (c > 0 ? 1 : 0);
        }
        case Kind::Function:
            if (a.fn() != b.fn()) return a.fn() < b.fn() ? -1 : 1;
            break;
        default: break;
    }
    auto x = a.args(), y = b.args();
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(x[i], y[i]);
        if (c != 0) return c;
    }
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.id() == b.id()) return true;
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
}

Expr num(std::int64_t n, std::int64_t d) { return Expr(Number::rational(n, d)); }
Expr sym(std::string name) { return Expr::symbol(std::move(name)); }

Expr sum(std::vector<Expr> terms) {
    std::vector<Expr> flat;
    flat.reserve(terms.size());
    Number c(0);
    for (auto& t : terms) {
        if (t.kind() == Kind::Sum) {
            for (const auto& s : t.args()) {
                if (s.is_constant())
                    c += s.value();
                else
                    flat.push_back(s);
            }
        } else if (t.is_constant()) {
            c += t.value();
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (!c.is_zero()) flat.emplace_back(c);
    if (flat.empty()) return Expr(Number(0));
    if (flat.size() == 1) return flat[0];
    std::stable_sort(flat.begin(), flat.end(), detail::term_less);
    return make_node(Kind::Sum, std::move(flat), false, Fn::Sin);
}

Expr product(std::vector<Expr> factors) {
    std::vector<Expr> flat;
    flat.reserve(factors.size() + 1);
    Number c(1);
    for (auto& f : factors) {
        if (f.kind() == Kind::Product) {
            for (const auto& s : f.args()) {
                if (s.is_constant())
                    c *= s.value();
                else
                    flat.push_back(s);
            }
        } else if (f.is_constant()) {
            c *= f.value();
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (c.is_zero()) return Expr(Number(0));
    if (flat.empty()) return Expr(c);
    if (flat.size() == 1 && c.is_one()) return flat[0];
    std::stable_sort(flat.begin(), flat.end(), detail::factor_less);
    if (!c.is_one()) flat.insert(flat.begin(), Expr(c));
    return make_node(Kind::Product, std::move(flat), false, Fn::Sin);
}

Expr power(const Expr& b, const Expr& e) {
    if (e.is_constant()) {
        if (e.value().is_zero()) return Expr(Number(1));
        if (e.value().is_one()) return b;
        if (b.is_constant()) {
            Number out;
            if (b.value().try_pow(e.value(), out)) return Expr(out);
        }
        if (b.kind() == Kind::Power && b.exponent().is_constant() && e.value().is_integer())
            return power(b.base(), Expr(b.exponent().value() * e.value()));
        if (b.kind() == Kind::Product && e.value().is_integer()) {
            std::vector<Expr> f;
            for (const auto& x : b.args()) f.push_back(power(x, e));
            return product(std::move(f));
        }
    }
    if (b.is_one()) return b;
    return make_node(Kind::Power, {b, e}, false, Fn::Sin);
}

Expr apply(Fn f, const Expr& a) {
    if (a.is_constant() && a.value().is_exact()) {
        if (a.value().is_zero()) {
            if (f == Fn::Sin || f == Fn::Tan) return Expr(Number(0));
            if (f == Fn::Cos || f == Fn::Exp) return Expr(Number(1));
        }
        if (a.value().is_one() && f == Fn::Ln) return Expr(Number(0));
    }
    return make_node(Kind::Function, {a}, false, f);
}

Expr neg(const Expr& a) { return product({Expr(Number(-1)), a}); }
Expr quotient(const Expr& a, const Expr& b) { return product({a, power(b, Expr(Number(-1)))}); }
Expr sqrt(const Expr& a) { return power(a, num(1, 2)); }
Expr sin(const Expr& a) { return apply(Fn::Sin, a); }
Expr cos(const Expr& a) { return apply(Fn::Cos, a); }
Expr tan(const Expr& a) { return apply(Fn::Tan, a); }
Expr cot(const Expr& a) { return apply(Fn::Cot, a); }
Expr ln(const Expr& a) { return apply(Fn::Ln, a); }
Expr exp(const Expr& a) { return apply(Fn::Exp, a); }

Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return sum({a, neg(b)}); }
Expr operator*(const Expr& a, const Expr& b) { return product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return quotient(a, b); }
Expr operator-(const Expr& a) { return neg(a); }

Expr detail::rebuild(const Expr& e, std::vector<Expr> args) {
    switch (e.kind()) {
        case Kind::Sum: return sum(std::move(args));
        case Kind::Product: return product(std::move(args));
        case Kind::Power: return power(args[0], args[1]);
        case Kind::Function: return apply(e.fn(), args[0]);
        default: return e;
    }
}

Expr substitute(const Expr& e, const Substitution& s) {
    std::uint64_t mask = 0;
    for (const auto& [name, _] : s) mask |= symbol_bit(name);
    std::unordered_map<const Node*, Expr> memo;
    std::function<Expr(const Expr&)> go = [&](const Expr& x) -> Expr {
        if ((x.symbol_mask() & mask) == 0) return x;
        if (x.kind() == Kind::Symbol) {
            for (const auto& [name, v] : s)
                if (name == x.name()) return v;
            return x;
        }
        auto it = memo.find(x.id());
        if (it != memo.end()) return it->second;
        std::vector<Expr> a;
        a.reserve(x.args().size());
        for (const auto& c : x.args()) a.push_back(go(c));
        Expr r = detail::rebuild(x, std::move(a));
        memo.emplace(x.id(), r);
        return r;
    };
    return go(e);
}

bool depends_on(const Expr& e, std::string_view var) {
    if ((e.symbol_mask() & symbol_bit(var)) == 0) return false;
    if (e.kind() == Kind::Symbol) return e.name() == var;
    for (const auto& a : e.args())
        if (depends_on(a, var)) return true;
    return false;
}

std::vector<std::string> free_symbols(const Expr& e) {
    std::set<std::string> out;
    std::function<void(const Expr&)> go = [&](const Expr& x) {
        if (x.kind() == Kind::Symbol) out.insert(x.name());
        for (const auto& a : x.args()) go(a);
    };
    go(e);
    return {out.begin(), out.end()};
}

std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    for (const auto& a : e.args()) n += node_count(a);
    return n;
}

}  // namespace tcalc
