#pragma once

#include "tensorcalc/derivative.hpp"

#include <cstdint>

namespace tcalc {

struct CurvatureBundle {
    TensorField riemann_mixed;  // R^i_jkl
    TensorField riemann;        // R_ijkl = g_ia R^a_jkl
    TensorField ricci;          // R_ij = R^a_ija
    Expr scalar;                // R = g^ij R_ij
    TensorField einstein;       // G_mn
    TensorField einstein_up;    // G^mn
    TensorField einstein_mixed; // G^m_n
};

// Memoized per metric.
[[nodiscard]] const CurvatureBundle& curvature(const Metric& g);

[[nodiscard]] TensorField riemann_second(const Metric& g);
[[nodiscard]] TensorField riemann_first(const Metric& g);
// [jl,i] derivative form and second-partials form of R_ijkl.
[[nodiscard]] TensorField riemann_first_bracket_form(const Metric& g);
[[nodiscard]] TensorField riemann_first_partials_form(const Metric& g);
[[nodiscard]] TensorField ricci_tensor(const Metric& g);
[[nodiscard]] Expr ricci_scalar(const Metric& g);
// R_ij through derivatives of ln sqrt g.
[[nodiscard]] TensorField ricci_log_form(const Metric& g);

struct RiemannCounts {
    std::int64_t two_distinct = 0;    // R_ijij
    std::int64_t three_distinct = 0;  // R_ijik
    std::int64_t four_distinct = 0;   // R_ijkl
    std::int64_t total = 0;
};

[[nodiscard]] RiemannCounts riemann_counts(int n);
[[nodiscard]] std::int64_t ricci_count(int n);

// True iff every R^i_jkl vanishes under the oracle.
[[nodiscard]] bool flatness_test(const Metric& g);

[[nodiscard]] Report verify_riemann_symmetries(const Metric& g);
// First identity in all fixed-index variants; the differential identity for n <= 3.
[[nodiscard]] Report verify_bianchi(const Metric& g);
[[nodiscard]] Report einstein_divergence_check(const Metric& g);
// Alternative forms, Ricci and Einstein symmetry, mixed-derivative commutators.
[[nodiscard]] Report verify_curvature(const Metric& g, std::uint64_t seed);

}  // namespace tcalc
