#pragma once

#include "tensorcalc/expr.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tcalc {

class DomainError : public std::runtime_error {
public:
    DomainError(const std::string& what, std::string subexpr)
        : std::runtime_error(what + (subexpr.empty() ? "" : " in " + subexpr)), subexpr_(std::move(subexpr)) {}
    [[nodiscard]] const std::string& subexpr() const { return subexpr_; }

private:
    std::string subexpr_;
};

class UnboundSymbolError : public std::runtime_error {
public:
    explicit UnboundSymbolError(std::string symbol)
        : std::runtime_error("unbound symbol '" + symbol + "'"), symbol_(std::move(symbol)) {}
    [[nodiscard]] const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

// Named coordinate values.
struct Point {
    std::vector<std::string> names;
    std::vector<double> values;

    void set(const std::string& name, double v);
    [[nodiscard]] const double* find(std::string_view name) const;
};

// x^k by repeated squaring; shared by every evaluation path.
[[nodiscard]] inline double powi(double x, unsigned k) {
    double r = 1.0;
    while (k != 0) {
        if (k & 1u) r *= x;
        k >>= 1u;
        if (k != 0) x *= x;
    }
    return r;
}

// Reference interpreter; throws DomainError or UnboundSymbolError.
[[nodiscard]] double evaluate(const Expr& e, const Point& p);

}  // namespace tcalc
