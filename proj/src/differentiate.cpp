#include "tensorcalc/expr.hpp"

#include <unordered_map>

namespace tcalc {

namespace {

class Deriv {
public:
    explicit Deriv(std::string_view var) : var_(var), bit_(symbol_bit(var)) {}

    Expr operator()(const Expr& e) {
        if ((e.symbol_mask() & bit_) == 0) return Expr(Number(0));
        if (e.kind() == Kind::Symbol) return Expr(Number(e.name() == var_ ? 1 : 0));
        auto it = memo_.find(e.id());
        if (it != memo_.end()) return it->second;
        Expr r = compute(e);
        memo_.emplace(e.id(), r);
        return r;
    }

private:
    std::string_view var_;
    std::uint64_t bit_;
    std::unordered_map<const Node*, Expr> memo_;

    Expr compute(const Expr& e) {
        switch (e.kind()) {
            case Kind::Sum: {
                std::vector<Expr> t;
                for (const auto& a : e.args()) t.push_back((*this)(a));
                return sum(std::move(t));
            }
            case Kind::Product: {
                auto a = e.args();
                std::vector<Expr> terms;
                for (std::size_t i = 0; i < a.size(); ++i) {
                    Expr d = (*this)(a[i]);
                    if (d.is_zero()) continue;
                    std::vector<Expr> f(a.begin(), a.end());
                    f[i] = d;
                    terms.push_back(product(std::move(f)));
                }
                return sum(std::move(terms));
            }
            case Kind::Power: {
                const Expr& b = e.base();
                const Expr& x = e.exponent();
                Expr db = (*this)(b);
                Expr dx = (*this)(x);
                if (dx.is_zero()) return product({x, power(b, x - Expr(Number(1))), db});
                if (db.is_zero()) return product({e, ln(b), dx});
                return e * (dx * ln(b) + x * db / b);
            }
            case Kind::Function: {
                const Expr& u = e.arg();
                Expr du = (*this)(u);
                switch (e.fn()) {
                    case Fn::Sin: return cos(u) * du;
                    case Fn::Cos: return neg(sin(u) * du);
                    case Fn::Tan: return du * power(cos(u), Expr(Number(-2)));
                    case Fn::Cot: return neg(du * power(sin(u), Expr(Number(-2))));
                    case Fn::Ln: return du / u;
                    case Fn::Exp: return e * du;
                }
                break;
            }
            default: break;
        }
        return Expr(Number(0));
    }
};

}  // namespace

Expr differentiate(const Expr& e, std::string_view var) { return normalize(Deriv(var)(e)); }

}  // namespace tcalc
