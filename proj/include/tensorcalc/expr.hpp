#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace tcalc {

// Exact rational while it fits in int64, plain double afterwards.
class Number {
public:
    Number() = default;
    Number(std::int64_t v) : num_(v) {}  // NOLINT(implicit)

    static Number rational(std::int64_t num, std::int64_t den);
    static Number real(double v);

    [[nodiscard]] bool is_exact() const { return exact_; }
    [[nodiscard]] std::int64_t num() const { return num_; }
    [[nodiscard]] std::int64_t den() const { return den_; }
    [[nodiscard]] double to_double() const;

    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_one() const;
    [[nodiscard]] bool is_minus_one() const;
    [[nodiscard]] bool is_integer() const;
    [[nodiscard]] bool is_negative() const;
    [[nodiscard]] bool is_half() const;

    [[nodiscard]] Number abs() const;
    // Exact or real power; false when the result would be undefined or irrational.
    [[nodiscard]] bool try_pow(const Number& e, Number& out) const;

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] std::size_t hash() const;

    friend Number operator+(const Number& a, const Number& b);
    friend Number operator-(const Number& a, const Number& b);
    friend Number operator*(const Number& a, const Number& b);
    friend Number operator/(const Number& a, const Number& b);
    Number operator-() const;
    Number& operator+=(const Number& o) { return *this = *this + o; }
    Number& operator*=(const Number& o) { return *this = *this * o; }

    friend int compare(const Number& a, const Number& b);
    friend bool operator==(const Number& a, const Number& b) { return compare(a, b) == 0; }
    friend bool operator<(const Number& a, const Number& b) { return compare(a, b) < 0; }

private:
    bool exact_ = true;
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
    double real_ = 0.0;
};

enum class Kind : std::uint8_t { Constant, Symbol, Power, Function, Product, Sum };
enum class Fn : std::uint8_t { Sin, Cos, Tan, Cot, Ln, Exp };

[[nodiscard]] std::string_view fn_name(Fn f);

struct Node;

// Immutable, shared expression handle.
class Expr {
public:
    Expr();  // the constant 0
    template <typename I, typename = std::enable_if_t<std::is_integral_v<I>>>
    Expr(I v) : Expr(Number(static_cast<std::int64_t>(v))) {}  // NOLINT(implicit)
    Expr(const Number& n);                                      // NOLINT(implicit)
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Expr symbol(std::string name);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const Number& value() const;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] Fn fn() const;
    [[nodiscard]] std::span<const Expr> args() const;
    [[nodiscard]] const Expr& base() const { return args()[0]; }
    [[nodiscard]] const Expr& exponent() const { return args()[1]; }
    [[nodiscard]] const Expr& arg() const { return args()[0]; }

    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] std::uint64_t symbol_mask() const;
    [[nodiscard]] bool is_normalized() const;
    [[nodiscard]] const Node* id() const { return node_.get(); }

    [[nodiscard]] bool is_constant() const { return kind() == Kind::Constant; }
    [[nodiscard]] bool is_zero() const;
    [[nodiscard]] bool is_one() const;
    [[nodiscard]] bool is_symbol(std::string_view n) const;

private:
    std::shared_ptr<const Node> node_;
};

struct Node {
    Kind kind = Kind::Constant;
    Fn fn = Fn::Sin;
    bool normalized = false;
    std::size_t hash = 0;
    std::uint64_t symbols = 0;
    Number value;
    std::string name;
    std::vector<Expr> args;
};

[[nodiscard]] int compare(const Expr& a, const Expr& b);
[[nodiscard]] bool operator==(const Expr& a, const Expr& b);
struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};
struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};

[[nodiscard]] std::uint64_t symbol_bit(std::string_view name);

// Light constructors: flatten, fold constants, drop identities, sort operands.
[[nodiscard]] Expr num(std::int64_t n, std::int64_t d = 1);
[[nodiscard]] Expr sym(std::string name);
[[nodiscard]] Expr sum(std::vector<Expr> terms);
[[nodiscard]] Expr product(std::vector<Expr> factors);
[[nodiscard]] Expr power(const Expr& b, const Expr& e);
[[nodiscard]] Expr apply(Fn f, const Expr& a);
[[nodiscard]] Expr neg(const Expr& a);
[[nodiscard]] Expr quotient(const Expr& a, const Expr& b);
[[nodiscard]] Expr sqrt(const Expr& a);
[[nodiscard]] Expr sin(const Expr& a);
[[nodiscard]] Expr cos(const Expr& a);
[[nodiscard]] Expr tan(const Expr& a);
[[nodiscard]] Expr cot(const Expr& a);
[[nodiscard]] Expr ln(const Expr& a);
[[nodiscard]] Expr exp(const Expr& a);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

// Deep canonical form; idempotent.
[[nodiscard]] Expr normalize(const Expr& e);
[[nodiscard]] Expr differentiate(const Expr& e, std::string_view var);
using Substitution = std::vector<std::pair<std::string, Expr>>;
[[nodiscard]] Expr substitute(const Expr& e, const Substitution& s);

[[nodiscard]] bool depends_on(const Expr& e, std::string_view var);
[[nodiscard]] std::vector<std::string> free_symbols(const Expr& e);
[[nodiscard]] std::size_t node_count(const Expr& e);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}
    [[nodiscard]] std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

[[nodiscard]] Expr parse(std::string_view text);
[[nodiscard]] std::string render(const Expr& e);

}  // namespace tcalc
