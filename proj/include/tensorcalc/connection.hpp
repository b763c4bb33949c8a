#pragma once

#include "tensorcalc/geometry.hpp"
#include "tensorcalc/report.hpp"
#include "tensorcalc/tensor.hpp"

#include <cstdint>

namespace tcalc {

// Christoffel symbols of both kinds, stored over i <= j.
class ChristoffelPair {
public:
    explicit ChristoffelPair(const Metric& g);

    [[nodiscard]] int dim() const { return n_; }
    // [ij,l]
    [[nodiscard]] const Expr& first(int i, int j, int l) const { return first_[slot(i, j) * n_ + (l - 1)]; }
    // Gamma^k_ij
    [[nodiscard]] const Expr& second(int k, int i, int j) const { return second_[slot(i, j) * n_ + (k - 1)]; }

private:
    [[nodiscard]] std::size_t slot(int i, int j) const;
    int n_;
    std::vector<Expr> first_, second_;
    std::vector<std::size_t> pair_;
};

// Memoized per metric; safe under concurrent first access.
[[nodiscard]] const ChristoffelPair& christoffel(const Metric& g);

// Tables as tensor-shaped objects: first kind indexed (i,j,l), second kind (k,i,j).
[[nodiscard]] TensorField christoffel_first(const Metric& g);
[[nodiscard]] TensorField christoffel_second(const Metric& g);

// d_i ln sqrt(g) for each coordinate.
[[nodiscard]] std::vector<Expr> contracted_christoffel(const Metric& g);

// Second kind from scale factors of an orthogonal 3D system.
[[nodiscard]] TensorField orthogonal_christoffel(const Metric& g);

[[nodiscard]] std::int64_t christoffel_count(int n);

[[nodiscard]] Report verify_metric_derivative_identities(const Metric& g);
// Full christoffel suite: round trip, symmetry, contraction, orthogonal cross-check, derivative identities.
[[nodiscard]] Report verify_christoffel(const Metric& g);

}  // namespace tcalc
