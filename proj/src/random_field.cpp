#include "tensorcalc/random_field.hpp"

namespace tcalc {

RandomField::RandomField(std::vector<std::string> coords, std::uint64_t seed) : coords_(std::move(coords)), rng_(seed) {
    if (coords_.empty()) throw TensorError("random field needs at least one coordinate");
}

Expr RandomField::term() {
    auto c = static_cast<std::int64_t>(pick(7)) - 3;
    if (c == 0) c = 4;
    std::vector<Expr> f{Expr(c)};
    for (const auto& x : coords_) {
        auto p = static_cast<std::int64_t>(pick(4));
        if (p == 3) p = 0;
        if (p > 0) f.push_back(power(sym(x), Expr(p)));
    }
    switch (pick(4)) {
        case 0: f.push_back(sin(sym(coords_[pick(coords_.size())]))); break;
        case 1: f.push_back(cos(sym(coords_[pick(coords_.size())]))); break;
        default: break;
    }
    return product(std::move(f));
}

Expr RandomField::scalar() {
    std::vector<Expr> t;
    std::uint64_t k = 1 + pick(3);
    for (std::uint64_t i = 0; i < k; ++i) t.push_back(term());
    return normalize(sum(std::move(t)));
}

TensorField RandomField::tensor(std::string name, const Signature& sig, int weight) {
    TensorField t(std::move(name), sig, static_cast<int>(coords_.size()), weight);
    for (std::size_t k = 0; k < t.size(); ++k) t.flat(k) = scalar();
    return t;
}

}  // namespace tcalc
