#include "tensorcalc/expr.hpp"

namespace tcalc {

namespace {

enum Prec : int { kSum = 1, kProd = 2, kNeg = 3, kPow = 4, kAtom = 5 };

struct Out {
    std::string s;
    int prec;
};

std::string wrap(const Out& o, int need) { return o.prec < need ? "(" + o.s + ")" : o.s; }

Out render_out(const Expr& e);

Out render_number(const Number& n) {
    std::string s = n.to_string();
    if (n.is_exact() && !n.is_integer()) return {s, kProd};
    return {s, n.is_negative() ? kNeg : kAtom};
}

// b^x for x > 0
Out positive_power(const Expr& b, const Number& x) {
    if (x.is_one()) return render_out(b);
    if (x.is_half()) return {"sqrt(" + render(b) + ")", kAtom};
    return {wrap(render_out(b), kAtom) + "^" + wrap(render_number(x), kNeg), kPow};
}

bool negative_exponent(const Expr& f) {
    return f.kind() == Kind::Power && f.exponent().is_constant() && f.exponent().value().is_negative();
}

bool negative_term(const Expr& t) {
    if (t.is_constant()) return t.value().is_negative();
    return t.kind() == Kind::Product && t.args()[0].is_constant() && t.args()[0].value().is_negative();
}

Out render_product(const Expr& e) {
    auto a = e.args();
    std::size_t first = 0;
    Number c(1);
    if (a[0].is_constant()) {
        c = a[0].value();
        first = 1;
    }
    bool negative = c.is_negative();
    c = c.abs();
    std::vector<std::string> numer, denom;
    if (c.is_exact()) {
        if (c.num() != 1) numer.push_back(std::to_string(c.num()));
        if (c.den() != 1) denom.push_back(std::to_string(c.den()));
    } else {
        numer.push_back(c.to_string());
    }
    for (std::size_t i = first; i < a.size(); ++i) {
        const Expr& f = a[i];
        if (negative_exponent(f))
            denom.push_back(wrap(positive_power(f.base(), -f.exponent().value()), kNeg));
        else
            numer.push_back(wrap(render_out(f), kNeg));
    }
    std::string s;
    for (std::size_t i = 0; i < numer.size(); ++i) s += (i ? "*" : "") + numer[i];
    if (s.empty()) s = "1";
    if (denom.size() == 1) {
        s += "/" + denom[0];
    } else if (!denom.empty()) {
        s += "/(";
        for (std::size_t i = 0; i < denom.size(); ++i) s += (i ? "*" : "") + denom[i];
        s += ")";
    }
    if (negative) {
        bool single = numer.size() == 1 && denom.empty();
        return {"-" + s, single ? kNeg : kProd};
    }
    return {s, kProd};
}

Out render_sum(const Expr& e) {
    auto a = e.args();
    std::string s = wrap(render_out(a[0]), kSum);
    for (std::size_t i = 1; i < a.size(); ++i) {
        if (negative_term(a[i]))
            s += " - " + wrap(render_out(neg(a[i])), kProd);
        else
            s += " + " + wrap(render_out(a[i]), kSum);
    }
    return {s, kSum};
}

Out render_out(const Expr& e) {
    switch (e.kind()) {
        case Kind::Constant: return render_number(e.value());
        case Kind::Symbol: return {e.name(), kAtom};
        case Kind::Function: return {std::string(fn_name(e.fn())) + "(" + render(e.arg()) + ")", kAtom};
        case Kind::Power: {
            const Expr& x = e.exponent();
            if (x.is_constant()) {
                if (x.value().is_negative())
                    return {"1/" + wrap(positive_power(e.base(), -x.value()), kNeg), kProd};
                return positive_power(e.base(), x.value());
            }
            return {wrap(render_out(e.base()), kAtom) + "^" + wrap(render_out(x), kNeg), kPow};
        }
        case Kind::Product: return render_product(e);
        case Kind::Sum: return render_sum(e);
    }
    return {"?", kAtom};
}

}  // namespace

std::string render(const Expr& e) { return render_out(e).s; }

}  // namespace tcalc
