#pragma once

#include "tensorcalc/connection.hpp"
#include "tensorcalc/geometry.hpp"
#include "tensorcalc/report.hpp"
#include "tensorcalc/tensor.hpp"

#include <cstdint>

namespace tcalc {

// Parameterized curve u^i = u^i(t) for t in [t1, t2].
struct Curve {
    std::string param = "t";
    std::vector<Expr> u;
    double t1 = 0.0;
    double t2 = 1.0;
};

// Checks the curve against the system: coordinate count, parameter-only
// dependence and, at evenly spaced parameter values, the sample domain.
void validate_curve(const Curve& c, const Metric& g);
// Oracle over the curve parameter interval.
[[nodiscard]] Oracle curve_oracle(const Curve& c, double tol = kDefaultTol);

// Appends a trailing covariant slot; includes the weight term when w != 0.
[[nodiscard]] TensorField covariant_derivative(const TensorField& t, const Metric& g);
// Appends a trailing contravariant slot: g^{qk} T_{...;k}.
[[nodiscard]] TensorField contravariant_derivative(const TensorField& t, const Metric& g);

enum class DiffOrder { JK, KJ };

// Rank-1 only. Result index (i, j, k) holds A_{i;jk} (JK) or A_{i;kj} (KJ).
[[nodiscard]] TensorField second_covariant_derivative(const TensorField& t, const Metric& g, DiffOrder order = DiffOrder::JK);
// Same quantity from the expanded one-shot formula.
[[nodiscard]] TensorField second_covariant_explicit(const TensorField& t, const Metric& g, DiffOrder order = DiffOrder::JK);
// The literal contravariant expansion with j and k in their written places, kept for comparison.
[[nodiscard]] TensorField second_contravariant_literal(const TensorField& t, const Metric& g);

// Slots are 1-based positions in the signature.
[[nodiscard]] TensorField raise_index(const TensorField& t, int slot, const Metric& g);
[[nodiscard]] TensorField lower_index(const TensorField& t, int slot, const Metric& g);
[[nodiscard]] TensorField contract(const TensorField& t, int slot_a, int slot_b);

// dT/dt along the curve; components are functions of the parameter.
[[nodiscard]] TensorField absolute_derivative(const TensorField& t, const Curve& c, const Metric& g);

// The metric and the Kronecker delta in tensor form.
[[nodiscard]] TensorField metric_tensor(const Metric& g, Variance v);
[[nodiscard]] TensorField delta_tensor(int n);

// g_{ij;k}, g^{ij}_{;k} and delta^i_{j;k} vanish.
[[nodiscard]] Report verify_ricci_theorem(const Metric& g);
// Linearity, product rule, metric bypass, gradient symmetry, contraction
// commuting, weight terms, second-derivative expansions, basis vectors.
[[nodiscard]] Report verify_derivative_properties(const Metric& g, std::uint64_t seed);

}  // namespace tcalc
