#include "tensorcalc/expr.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <optional>

namespace tcalc {

namespace {

std::optional<Fn> lookup_fn(std::string_view name) {
    if (name == "sin") return Fn::Sin;
    if (name == "cos") return Fn::Cos;
    if (name == "tan") return Fn::Tan;
    if (name == "cot") return Fn::Cot;
    if (name == "ln") return Fn::Ln;
    if (name == "exp") return Fn::Exp;
    return std::nullopt;
}

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Expr run() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
        Expr e = expr();
        skip();
        if (pos_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            if (eat('+'))
                lhs = lhs + term();
            else if (eat('-'))
                lhs = lhs - term();
            else
                return lhs;
        }
    }

    Expr term() {
        Expr lhs = unary();
        for (;;) {
            if (eat('*'))
                lhs = lhs * unary();
            else if (eat('/'))
                lhs = lhs / unary();
            else
                return lhs;
        }
    }

    Expr unary() {
        if (eat('-')) return neg(unary());
        if (eat('+')) return unary();
        return pow_expr();
    }

    Expr pow_expr() {
        Expr b = primary();
        if (eat('^')) return power(b, unary());
        return b;
    }

    Expr primary() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return e;
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    Expr identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        std::string_view name = s_.substr(start, pos_ - start);
        std::size_t after = pos_;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            auto f = lookup_fn(name);
            if (!f && name != "sqrt") throw ParseError("unknown function '" + std::string(name) + "'", start);
            ++pos_;
            Expr a = expr();
            if (!eat(')')) throw ParseError("expected ')'", pos_);
            return f ? apply(*f, a) : sqrt(a);
        }
        pos_ = after;
        if (lookup_fn(name) || name == "sqrt") throw ParseError("expected '(' after function name", pos_);
        return sym(std::string(name));
    }

    Expr number() {
        std::size_t start = pos_;
        std::int64_t mant = 0;
        int scale = 0;
        bool overflow = false, digits = false;
        auto push_digit = [&](char d) {
            digits = true;
            if (mant > (std::numeric_limits<std::int64_t>::max() - 9) / 10) {
                overflow = true;
                return false;
            }
            mant = mant * 10 + (d - '0');
            return true;
        };
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) push_digit(s_[pos_++]);
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                if (push_digit(s_[pos_])) --scale;
                ++pos_;
            }
        }
        if (!digits) throw ParseError("malformed number", start);
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t epos = pos_ + 1;
            if (epos < s_.size() && (s_[epos] == '+' || s_[epos] == '-')) ++epos;
            if (epos < s_.size() && std::isdigit(static_cast<unsigned char>(s_[epos]))) {
                bool negexp = s_[pos_ + 1] == '-';
                int ev = 0;
                pos_ = epos;
                while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                    ev = std::min(ev * 10 + (s_[pos_] - '0'), 10000);
                    ++pos_;
                }
                scale += negexp ? -ev : ev;
            }
        }
        std::string text(s_.substr(start, pos_ - start));
        if (overflow || scale > 18 || scale < -18)
            return Expr(Number::real(std::strtod(text.c_str(), nullptr)));
        std::int64_t p10 = 1;
        for (int i = 0; i < (scale < 0 ? -scale : scale); ++i) p10 *= 10;
        if (scale >= 0) {
            if (mant > std::numeric_limits<std::int64_t>::max() / p10)
                return Expr(Number::real(std::strtod(text.c_str(), nullptr)));
            return Expr(Number(mant * p10));
        }
        return Expr(Number::rational(mant, p10));
    }
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace tcalc
