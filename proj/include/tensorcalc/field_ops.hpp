#pragma once

#include "tensorcalc/derivative.hpp"

#include <array>
#include <cstdint>

namespace tcalc {

// Components on the unit basis of an orthogonal system.
struct PhysicalForm {
    TensorField table;
    Signature source;
};

// h_i per contravariant slot, 1/h_i per covariant slot.
[[nodiscard]] PhysicalForm physical_components(const TensorField& t, const Metric& g);
[[nodiscard]] TensorField tensor_components(const PhysicalForm& p, const Metric& g);

// [grad f]_i = d_i f, or g^ij d_j f for Variance::Up.
[[nodiscard]] TensorField gradient(const Expr& f, const Metric& g, Variance v = Variance::Down);
// Rank 1 or 2; the derivative index comes first: (grad A)_{i j..} = A_{j..;i}.
[[nodiscard]] TensorField gradient(const TensorField& a, const Metric& g);

// Voss-Weyl form; covariant input is raised first.
[[nodiscard]] Expr divergence(const TensorField& a, const Metric& g);
// A^i_{;i} by contracting the covariant derivative.
[[nodiscard]] Expr divergence_contracted(const TensorField& a, const Metric& g);
// Divergence on the given contravariant slot (1-based).
[[nodiscard]] TensorField divergence_tensor(const TensorField& t, int slot, const Metric& g);

// Contravariant curl of a covariant vector, 3D only. Contravariant input is
// lowered first and a notice is written when `notice` is given.
[[nodiscard]] TensorField curl(const TensorField& a, const Metric& g, std::string* notice = nullptr);
// Same with the Christoffel terms kept.
[[nodiscard]] TensorField curl_full(const TensorField& a, const Metric& g, std::string* notice = nullptr);

[[nodiscard]] Expr laplacian(const Expr& f, const Metric& g);
// Scale-factor form (1/H) sum d_i(H/h_i^2 d_i f), H = h_1...h_n.
[[nodiscard]] Expr laplacian_orthogonal(const Expr& f, const Metric& g);
// g^jk B_{;jk}, same variance as the input.
[[nodiscard]] TensorField laplacian_vector(const TensorField& b, const Metric& g);

// Differential symbols are named "d" + coordinate.
[[nodiscard]] std::string differential(const Metric& g, int i);
[[nodiscard]] Expr line_element(const Metric& g);
// Area normal to u^i in 3D: sqrt(g g^ii) du^j du^k.
[[nodiscard]] Expr area_element(const Metric& g, int i);
[[nodiscard]] Expr area_element_orthogonal(const Metric& g, int i);
[[nodiscard]] Expr volume_element(const Metric& g);

[[nodiscard]] Expr dot(const TensorField& a, const TensorField& b, const Metric& g);
// Covariant, contravariant and mixed routes.
[[nodiscard]] std::array<Expr, 3> magnitude_routes(const TensorField& a, const Metric& g);
[[nodiscard]] Expr magnitude(const TensorField& a, const Metric& g);
// cos of the angle; throws GeometryError if either vector is null at a sample point.
[[nodiscard]] Expr cos_angle(const TensorField& a, const TensorField& b, const Metric& g);
// 3D only; output variance chosen by `out`.
[[nodiscard]] TensorField cross(const TensorField& a, const TensorField& b, const Metric& g, Variance out = Variance::Down);

inline constexpr double kLengthTol = 1e-8;
inline constexpr int kLengthDepth = 40;
// Adaptive Simpson on sqrt(g_ij du^i/dt du^j/dt).
[[nodiscard]] double curve_length(const Curve& c, const Metric& g, double tol = kLengthTol, int max_depth = kLengthDepth);

// Divergence, curl and Laplacian equivalences on random fields, plus
// physical round trips, curl of gradients and divergence of curls.
[[nodiscard]] Report verify_operators(const Metric& g, std::uint64_t seed, int fields = 5);

}  // namespace tcalc
