#pragma once

#include "tensorcalc/expr.hpp"

#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcalc {

class TensorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Variance : std::uint8_t { Up, Down };

using Signature = std::vector<Variance>;
using Index = std::vector<int>;  // 1-based multi-index

// "udd" style rendering of a signature; parse_signature is its inverse.
[[nodiscard]] std::string signature_string(const Signature& s);
[[nodiscard]] Signature parse_signature(std::string_view s);

// Dense component table over n^rank 1-based multi-indices.
class TensorField {
public:
    TensorField() = default;
    TensorField(std::string name, Signature sig, int dim, int weight = 0);

    static TensorField scalar(std::string name, Expr value, int dim, int weight = 0);

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] const Signature& signature() const { return sig_; }
    [[nodiscard]] int rank() const { return static_cast<int>(sig_.size()); }
    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] int weight() const { return weight_; }
    [[nodiscard]] std::size_t size() const { return table_.size(); }

    TensorField& rename(std::string n) {
        name_ = std::move(n);
        return *this;
    }
    TensorField& set_weight(int w) {
        weight_ = w;
        return *this;
    }

    [[nodiscard]] const Expr& at(std::span<const int> idx) const { return table_[offset(idx)]; }
    [[nodiscard]] Expr& at(std::span<const int> idx) { return table_[offset(idx)]; }
    [[nodiscard]] const Expr& at(std::initializer_list<int> idx) const { return at(std::span(idx.begin(), idx.size())); }
    [[nodiscard]] Expr& at(std::initializer_list<int> idx) { return at(std::span(idx.begin(), idx.size())); }
    [[nodiscard]] const Expr& flat(std::size_t k) const { return table_[k]; }
    [[nodiscard]] Expr& flat(std::size_t k) { return table_[k]; }
    [[nodiscard]] const Expr& value() const { return table_.at(0); }  // rank 0

    [[nodiscard]] Index unflatten(std::size_t k) const;
    [[nodiscard]] std::size_t offset(std::span<const int> idx) const;

    // Visits every multi-index in lexicographic order.
    void for_each(const std::function<void(const Index&, const Expr&)>& f) const;
    void fill(const std::function<Expr(const Index&)>& f);

    [[nodiscard]] TensorField normalized() const;
    [[nodiscard]] bool all_zero() const;

private:
    std::string name_;
    Signature sig_;
    int dim_ = 0;
    int weight_ = 0;
    std::vector<Expr> table_;
};

// Componentwise arithmetic; shapes and weights must agree for add.
[[nodiscard]] TensorField add(const TensorField& a, const TensorField& b);
[[nodiscard]] TensorField scale(const Expr& c, const TensorField& a);
// Outer product: signatures concatenate, weights add.
[[nodiscard]] TensorField outer(const TensorField& a, const TensorField& b);

// Calls f for every multi-index of the given rank over 1..n, lexicographically.
void for_each_index(int rank, int n, const std::function<void(const Index&)>& f);

}  // namespace tcalc
