#include "tensorcalc/expr.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>

namespace tcalc {

namespace {

using i128 = __int128;

constexpr i128 kMax = std::numeric_limits<std::int64_t>::max();
constexpr i128 kMin = -kMax;  // keep negation safe

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Reduce num/den; false if the result does not fit.
bool reduce(i128 n, i128 d, std::int64_t& on, std::int64_t& od) {
    if (d == 0) return false;
    if (d < 0) {
        n = -n;
        d = -d;
    }
    i128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n > kMax || n < kMin || d > kMax) return false;
    on = static_cast<std::int64_t>(n);
    od = static_cast<std::int64_t>(d);
    return true;
}

Number from128(i128 n, i128 d) {
    std::int64_t a = 0, b = 1;
    if (reduce(n, d, a, b)) return Number::rational(a, b);
    return Number::real(static_cast<double>(n) / static_cast<double>(d));
}

// Exact integer k-th root of v >= 0, if any.
bool int_root(std::int64_t v, std::int64_t k, std::int64_t& out) {
    if (v < 0) return false;
    if (v <= 1) {
        out = v;
        return true;
    }
    auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(v), 1.0 / static_cast<double>(k))));
    for (std::int64_t c = std::max<std::int64_t>(0, guess - 1); c <= guess + 1; ++c) {
        i128 p = 1;
        bool over = false;
        for (std::int64_t i = 0; i < k; ++i) {
            p *= c;
            if (p > kMax) {
                over = true;
                break;
            }
        }
        if (!over && p == v) {
            out = c;
            return true;
        }
    }
    return false;
}

bool int_pow(std::int64_t n, std::int64_t d, std::int64_t k, Number& out) {
    i128 rn = 1, rd = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        rn *= n;
        rd *= d;
        if (rn > kMax || rn < kMin || rd > kMax) {
            out = Number::real(std::pow(static_cast<double>(n) / static_cast<double>(d), static_cast<double>(k)));
            return true;
        }
    }
    out = from128(rn, rd);
    return true;
}

}  // namespace

Number Number::rational(std::int64_t num, std::int64_t den) {
    Number r;
    if (den == 0) throw std::domain_error("zero denominator");
    std::int64_t a = 0, b = 1;
    if (!reduce(num, den, a, b)) return real(static_cast<double>(num) / static_cast<double>(den));
    r.num_ = a;
    r.den_ = b;
    return r;
}

Number Number::real(double v) {
    Number r;
    r.exact_ = false;
    r.real_ = v;
    return r;
}

double Number::to_double() const {
    return exact_ ? static_cast<double>(num_) / static_cast<double>(den_) : real_;
}

bool Number::is_zero() const { return exact_ ? num_ == 0 : real_ == 0.0; }
bool Number::is_one() const { return exact_ && num_ == 1 && den_ == 1; }
bool Number::is_minus_one() const { return exact_ && num_ == -1 && den_ == 1; }
bool Number::is_integer() const { return exact_ && den_ == 1; }
bool Number::is_negative() const { return exact_ ? num_ < 0 : real_ < 0.0; }
bool Number::is_half() const { return exact_ && num_ == 1 && den_ == 2; }

Number Number::abs() const { return is_negative() ? -*this : *this; }

Number operator+(const Number& a, const Number& b) {
    if (!a.exact_ || !b.exact_) return Number::real(a.to_double() + b.to_double());
    return from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Number operator-(const Number& a, const Number& b) { return a + (-b); }

Number operator*(const Number& a, const Number& b) {
    if (!a.exact_ || !b.exact_) return Number::real(a.to_double() * b.to_double());
    return from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Number operator/(const Number& a, const Number& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.exact_ || !b.exact_) return Number::real(a.to_double() / b.to_double());
    return from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

Number Number::operator-() const {
    if (!exact_) return real(-real_);
    Number r = *this;
    r.num_ = -num_;
    return r;
}

bool Number::try_pow(const Number& e, Number& out) const {
    if (e.is_zero()) {
        out = Number(1);
        return true;
    }
    if (is_zero()) {
        if (e.is_negative()) return false;
        out = Number(0);
        return true;
    }
    if (exact_ && e.is_integer()) {
        std::int64_t k = e.num();
        bool inv = k < 0;
        if (inv) k = -k;
        if (k > 4096) return false;
        Number p;
        int_pow(num_, den_, k, p);
        out = inv ? Number(1) / p : p;
        return true;
    }
    if (exact_ && e.is_exact()) {
        // p/q power of a rational: exact only for perfect q-th powers.
        if (num_ < 0 || e.den() > 64) return false;
        std::int64_t rn = 0, rd = 0;
        if (!int_root(num_, e.den(), rn) || !int_root(den_, e.den(), rd)) return false;
        return Number::rational(rn, rd).try_pow(Number(e.num()), out);
    }
    double b = to_double();
    if (b < 0) return false;
    out = Number::real(std::pow(b, e.to_double()));
    return std::isfinite(out.to_double());
}

int compare(const Number& a, const Number& b) {
    if (a.exact_ && b.exact_) {
        i128 l = i128(a.num_) * b.den_;
        i128 r = i128(b.num_) * a.den_;
        return l < r ? -1 : (l > r ? 1 : 0);
    }
    double x = a.to_double(), y = b.to_double();
    if (x < y) return -1;
    if (x > y) return 1;
    if (a.exact_ != b.exact_) return a.exact_ ? -1 : 1;
    return 0;
}

std::string Number::to_string() const {
    if (!exact_) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", real_);
        std::string s = buf;
        // keep reals visibly non-integral so they re-parse as reals
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        return s;
    }
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

std::size_t Number::hash() const {
    if (!exact_) return std::hash<double>{}(real_) ^ 0x9e3779b97f4a7c15ULL;
    return std::hash<std::int64_t>{}(num_) * 31 + std::hash<std::int64_t>{}(den_);
}

}  // namespace tcalc
