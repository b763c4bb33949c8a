#include "tensorcalc/tensor.hpp"

namespace tcalc {

std::string signature_string(const Signature& s) {
    std::string out;
    for (auto v : s) out += v == Variance::Up ? 'u' : 'd';
    return out;
}

Signature parse_signature(std::string_view s) {
    Signature out;
    for (char c : s) {
        if (c == 'u')
            out.push_back(Variance::Up);
        else if (c == 'd')
            out.push_back(Variance::Down);
        else
            throw TensorError(std::string("bad variance token '") + c + "'");
    }
    return out;
}

TensorField::TensorField(std::string name, Signature sig, int dim, int weight)
    : name_(std::move(name)), sig_(std::move(sig)), dim_(dim), weight_(weight) {
    if (dim < 1) throw TensorError("tensor dimension must be positive");
    std::size_t n = 1;
    for (std::size_t i = 0; i < sig_.size(); ++i) n *= static_cast<std::size_t>(dim);
    table_.assign(n, Expr());
}

TensorField TensorField::scalar(std::string name, Expr value, int dim, int weight) {
    TensorField t(std::move(name), {}, dim, weight);
    t.table_[0] = std::move(value);
    return t;
}

std::size_t TensorField::offset(std::span<const int> idx) const {
    if (idx.size() != sig_.size())
        throw TensorError("index of length " + std::to_string(idx.size()) + " for rank " + std::to_string(sig_.size()));
    std::size_t k = 0;
    for (int i : idx) {
        if (i < 1 || i > dim_) throw TensorError("index " + std::to_string(i) + " out of range 1.." + std::to_string(dim_));
        k = k * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i - 1);
    }
    return k;
}

Index TensorField::unflatten(std::size_t k) const {
    Index idx(sig_.size());
    for (std::size_t s = sig_.size(); s-- > 0;) {
        idx[s] = static_cast<int>(k % static_cast<std::size_t>(dim_)) + 1;
        k /= static_cast<std::size_t>(dim_);
    }
    return idx;
}

void TensorField::for_each(const std::function<void(const Index&, const Expr&)>& f) const {
    for (std::size_t k = 0; k < table_.size(); ++k) f(unflatten(k), table_[k]);
}

void TensorField::fill(const std::function<Expr(const Index&)>& f) {
    for (std::size_t k = 0; k < table_.size(); ++k) table_[k] = f(unflatten(k));
}

TensorField TensorField::normalized() const {
    TensorField t = *this;
    for (auto& e : t.table_) e = normalize(e);
    return t;
}

bool TensorField::all_zero() const {
    for (const auto& e : table_)
        if (!e.is_zero()) return false;
    return true;
}

void for_each_index(int rank, int n, const std::function<void(const Index&)>& f) {
    Index idx(static_cast<std::size_t>(rank), 1);
    for (;;) {
        f(idx);
        int s = rank - 1;
        while (s >= 0 && idx[static_cast<std::size_t>(s)] == n) idx[static_cast<std::size_t>(s--)] = 1;
        if (s < 0) return;
        ++idx[static_cast<std::size_t>(s)];
    }
}


TensorField add(const TensorField& a, const TensorField& b) {
    if (a.signature() != b.signature() || a.dim() != b.dim()) throw TensorError("add: shape mismatch");
    if (a.weight() != b.weight()) throw TensorError("add: weight mismatch");
    TensorField t(a.name() + "+" + b.name(), a.signature(), a.dim(), a.weight());
    for (std::size_t k = 0; k < t.size(); ++k) t.flat(k) = normalize(a.flat(k) + b.flat(k));
    return t;
}

TensorField scale(const Expr& c, const TensorField& a) {
    TensorField t = a;
    for (std::size_t k = 0; k < t.size(); ++k) t.flat(k) = normalize(c * a.flat(k));
    return t;
}

TensorField outer(const TensorField& a, const TensorField& b) {
    if (a.dim() != b.dim()) throw TensorError("outer: dimension mismatch");
    Signature sig = a.signature();
    sig.insert(sig.end(), b.signature().begin(), b.signature().end());
    TensorField t(a.name() + b.name(), sig, a.dim(), a.weight() + b.weight());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) t.flat(i * b.size() + j) = normalize(a.flat(i) * b.flat(j));
    return t;
}

}  // namespace tcalc
