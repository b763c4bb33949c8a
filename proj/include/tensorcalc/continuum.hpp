#pragma once

#include "tensorcalc/geometry.hpp"
#include "tensorcalc/report.hpp"

#include <array>
#include <optional>

namespace tcalc {

// Cartesian continuum quantities. Present coordinates are x, y, z; past
// (reference) coordinates are X, Y, Z.
using Matrix3 = std::array<std::array<Expr, 3>, 3>;
using FieldVector3 = std::array<Expr, 3>;

inline const std::array<std::string, 3> kPresentCoords{"x", "y", "z"};
inline const std::array<std::string, 3> kPastCoords{"X", "Y", "Z"};

// x, y, z, X, Y, Z in [-2, 2] and t in [0.5, 2]
[[nodiscard]] Oracle continuum_oracle(std::uint64_t seed = kDefaultSeed, double tol = kDefaultTol);

[[nodiscard]] Matrix3 transpose(const Matrix3& a);
[[nodiscard]] Matrix3 multiply(const Matrix3& a, const Matrix3& b);
[[nodiscard]] Matrix3 identity3();

// [grad v]_ij = d_i v_j over x, y, z
[[nodiscard]] Matrix3 velocity_gradient(const FieldVector3& v);

// gamma_ij = (d_i d_j + d_j d_i) / 2
[[nodiscard]] Matrix3 infinitesimal_strain(const FieldVector3& d);

// T_i = sigma_ij n_j
[[nodiscard]] FieldVector3 traction(const Matrix3& sigma, const FieldVector3& n);

// Present position as functions of X, Y, Z; optionally the inverse map in x, y, z.
struct Motion {
    FieldVector3 present;
    std::optional<FieldVector3> past;
};

struct DisplacementGradients {
    Matrix3 E;      // dx_i/dX_j
    Matrix3 Delta;  // dX_i/dx_j, expressed at the particle (functions of X, Y, Z)
    bool Delta_from_inverse_map = false;
};

// Delta is differentiated from the inverse map when one is given, else
// obtained as adj(E)/det E. Throws GeometryError if det E vanishes at a sample.
[[nodiscard]] DisplacementGradients displacement_gradients(const Motion& m, const Oracle& o);

[[nodiscard]] Matrix3 finger(const Matrix3& E);       // E E^T
[[nodiscard]] Matrix3 cauchy(const Matrix3& Delta);   // Delta^T Delta

struct VelocityDecomposition {
    Matrix3 grad;  // grad v
    Matrix3 S;     // rate of strain
    Matrix3 Sbar;  // vorticity
};

[[nodiscard]] VelocityDecomposition velocity_gradient_decompose(const FieldVector3& v);

[[nodiscard]] constexpr int symmetric_count(int n) { return n * (n + 1) / 2; }
[[nodiscard]] constexpr int antisymmetric_count(int n) { return n * (n - 1) / 2; }

// Leading principal minors positive at every sample point.
[[nodiscard]] bool positive_definite(const Matrix3& a, const Oracle& o);

// Largest |A - I| over sample points, evaluated numerically.
[[nodiscard]] double identity_residual(const Matrix3& a, const Oracle& o);

[[nodiscard]] FieldVector3 parse_vector3(const std::string& a, const std::string& b, const std::string& c);

[[nodiscard]] Report verify_continuum(std::uint64_t seed = kDefaultSeed, double tol = kDefaultTol);

}  // namespace tcalc
