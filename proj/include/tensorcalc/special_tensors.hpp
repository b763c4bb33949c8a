#pragma once

#include "tensorcalc/geometry.hpp"
#include "tensorcalc/report.hpp"
#include "tensorcalc/tensor.hpp"

#include <cstdint>
#include <span>

namespace tcalc {

[[nodiscard]] int kronecker(int i, int j);

// Permutation symbol as the product of sign(a_j - a_i) over i < j.
[[nodiscard]] int epsilon(std::span<const int> idx, int n);
// Parity of the permutation, 0 for repeated entries.
[[nodiscard]] int epsilon_by_parity(std::span<const int> idx, int n);
// (1/S(n-1)) * prod_{i<j} (a_j - a_i), S the superfactorial.
[[nodiscard]] std::int64_t epsilon_by_superfactorial(std::span<const int> idx, int n);

// Determinant of the matrix of ordinary deltas delta^{upper_a}_{lower_b}.
[[nodiscard]] int generalized_delta(std::span<const int> upper, std::span<const int> lower, int n);

[[nodiscard]] std::int64_t factorial(int n);

// Relative permutation tensor: weight -1 covariant, +1 contravariant.
[[nodiscard]] TensorField relative_epsilon(int n, Variance v);
// Absolute form: sqrt(g)*epsilon covariant, epsilon/sqrt(g) contravariant (n = 3 only).
[[nodiscard]] TensorField absolute_epsilon(const Metric& g, Variance v);

[[nodiscard]] Report verify_epsilon_identities(int n);
// g^ij e_ikl e_jmn = g_km g_ln - g_kn g_lm with the absolute covariant e.
[[nodiscard]] Report metric_epsilon_delta(const Metric& g);

}  // namespace tcalc
