#include "tensorcalc/evaluate.hpp"

#include <cmath>

namespace tcalc {

void Point::set(const std::string& name, double v) {
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            values[i] = v;
            return;
        }
    }
    names.push_back(name);
    values.push_back(v);
}

const double* Point::find(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return &values[i];
    return nullptr;
}

namespace {

[[noreturn]] void fail(const char* what, const Expr& e) { throw DomainError(what, render(e)); }

double checked(double v, const Expr& e) {
    if (!std::isfinite(v)) fail("non-finite value", e);
    return v;
}

double eval(const Expr& e, const Point& p) {
    switch (e.kind()) {
        case Kind::Constant: return e.value().to_double();
        case Kind::Symbol: {
            const double* v = p.find(e.name());
            if (v == nullptr) throw UnboundSymbolError(e.name());
            return *v;
        }
        case Kind::Sum: {
            auto a = e.args();
            double acc = eval(a[0], p);
            for (std::size_t i = 1; i < a.size(); ++i) acc = acc + eval(a[i], p);
            return checked(acc, e);
        }
        case Kind::Product: {
            auto a = e.args();
            double acc = eval(a[0], p);
            for (std::size_t i = 1; i < a.size(); ++i) acc = acc * eval(a[i], p);
            return checked(acc, e);
        }
        case Kind::Power: {
            double b = eval(e.base(), p);
            const Expr& x = e.exponent();
            if (x.is_constant()) {
                const Number& k = x.value();
                if (k.is_integer() && k.num() >= -1000000 && k.num() <= 1000000) {
                    auto m = static_cast<unsigned>(k.num() < 0 ? -k.num() : k.num());
                    double r = powi(b, m);
                    if (k.num() < 0) {
                        if (r == 0.0) fail("division by zero", e);
                        r = 1.0 / r;
                    }
                    return checked(r, e);
                }
                if (k.is_half()) {
                    if (b < 0.0) fail("square root of a negative value", e);
                    return checked(std::sqrt(b), e);
                }
                if (k == Number::rational(-1, 2)) {
                    if (b <= 0.0) fail("inverse square root of a non-positive value", e);
                    return checked(1.0 / std::sqrt(b), e);
                }
                double c = k.to_double();
                if (b < 0.0 || (b == 0.0 && c < 0.0)) fail("fractional power of a non-positive value", e);
                return checked(std::pow(b, c), e);
            }
            double c = eval(x, p);
            if (b <= 0.0) fail("symbolic power of a non-positive value", e);
            return checked(std::pow(b, c), e);
        }
        case Kind::Function: {
            double u = eval(e.arg(), p);
            switch (e.fn()) {
                case Fn::Sin: return checked(std::sin(u), e);
                case Fn::Cos: return checked(std::cos(u), e);
                case Fn::Tan: {
                    double c = std::cos(u);
                    if (c == 0.0) fail("tan pole", e);
                    return checked(std::sin(u) / c, e);
                }
                case Fn::Cot: {
                    double s = std::sin(u);
                    if (s == 0.0) fail("cot pole", e);
                    return checked(std::cos(u) / s, e);
                }
                case Fn::Ln:
                    if (u <= 0.0) fail("logarithm of a non-positive value", e);
                    return checked(std::log(u), e);
                case Fn::Exp: return checked(std::exp(u), e);
            }
        }
    }
    return 0.0;
}

}  // namespace

double evaluate(const Expr& e, const Point& p) { return eval(e, p); }

}  // namespace tcalc
