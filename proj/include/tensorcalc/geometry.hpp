#pragma once

#include "tensorcalc/expr.hpp"
#include "tensorcalc/oracle.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcalc {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Row-major square or rectangular table, 0-based storage.
using Matrix = std::vector<std::vector<Expr>>;

[[nodiscard]] Expr determinant(const Matrix& m);
[[nodiscard]] Matrix adjugate(const Matrix& m);
[[nodiscard]] Matrix normalized(const Matrix& m);

struct CoordinateSystem {
    std::string name;
    std::vector<std::string> coords;
    SampleDomain domain;

    CoordinateSystem() = default;
    CoordinateSystem(std::string name, std::vector<std::string> coords, SampleDomain domain);

    [[nodiscard]] int dim() const { return static_cast<int>(coords.size()); }
    [[nodiscard]] const std::string& coord(int i) const { return coords.at(static_cast<std::size_t>(i - 1)); }
};

// Cartesian coordinates x^k as functions of the curvilinear u^i.
struct CartesianMap {
    std::vector<Expr> components;
};

struct Jacobian {
    Matrix J;  // J[k][i] = dx^k/du^i
    Expr det;
    int det_sign = 1;  // sign of det J on the sample domain
};

[[nodiscard]] Jacobian jacobian(const CartesianMap& m, const CoordinateSystem& s);

// Once-only cache slot for derived data such as connection coefficients.
struct LazySlot {
    std::once_flag flag;
    std::shared_ptr<const void> value;
};

class Metric {
public:
    enum Slot : std::size_t { kChristoffel, kCurvature, kSlotCount };

    [[nodiscard]] const CoordinateSystem& system() const { return d_->system; }
    [[nodiscard]] int dim() const { return d_->system.dim(); }
    [[nodiscard]] const std::string& coord(int i) const { return d_->system.coord(i); }

    // 1-based accessors
    [[nodiscard]] const Expr& g(int i, int j) const { return d_->g[idx(i)][idx(j)]; }
    [[nodiscard]] const Expr& ginv(int i, int j) const { return d_->ginv[idx(i)][idx(j)]; }
    [[nodiscard]] const Matrix& covariant() const { return d_->g; }
    [[nodiscard]] const Matrix& contravariant() const { return d_->ginv; }

    [[nodiscard]] const Expr& det() const { return d_->det; }
    // sqrt(|det g|); the sign of det g is constant over the domain
    [[nodiscard]] const Expr& sqrt_det() const { return d_->sqrt_det; }
    [[nodiscard]] int det_sign() const { return d_->det_sign; }

    [[nodiscard]] bool orthogonal() const { return d_->orthogonal; }
    [[nodiscard]] bool has_scale_factors() const { return !d_->h.empty(); }
    [[nodiscard]] const std::vector<Expr>& scale_factors() const;
    [[nodiscard]] const Expr& h(int i) const { return scale_factors()[idx(i)]; }

    [[nodiscard]] bool has_map() const { return d_->map.has_value(); }
    [[nodiscard]] const CartesianMap& map() const;
    [[nodiscard]] const Jacobian& jacobian() const;

    [[nodiscard]] const Oracle& oracle() const { return d_->oracle; }
    [[nodiscard]] Metric with_oracle(const Oracle& o) const;

    template <typename T, typename F>
    const T& memo(Slot s, F&& make) const {
        LazySlot& slot = d_->slots[s];
        std::call_once(slot.flag, [&] { slot.value = std::make_shared<const T>(make()); });
        return *static_cast<const T*>(slot.value.get());
    }

    static Metric from_components(CoordinateSystem s, Matrix g, double tol = kDefaultTol);
    static Metric from_map(CoordinateSystem s, CartesianMap m, double tol = kDefaultTol);

private:
    struct Data {
        CoordinateSystem system;
        Matrix g, ginv;
        Expr det, sqrt_det;
        int det_sign = 1;
        bool orthogonal = false;
        std::vector<Expr> h;
        std::string h_error;
        std::optional<CartesianMap> map;
        std::optional<Jacobian> jac;
        Oracle oracle;
        mutable LazySlot slots[kSlotCount];

        Data(CoordinateSystem s, Oracle o) : system(std::move(s)), oracle(std::move(o)) {}
    };

    std::size_t idx(int i) const {
        if (i < 1 || i > dim()) throw GeometryError("index " + std::to_string(i) + " out of range 1.." + std::to_string(dim()));
        return static_cast<std::size_t>(i - 1);
    }

    static Metric build(CoordinateSystem s, Matrix g, std::optional<CartesianMap> m, std::optional<Jacobian> j, double tol);

    std::shared_ptr<Data> d_;
};

[[nodiscard]] inline Metric metric_from_components(const Matrix& rows, const CoordinateSystem& s) {
    return Metric::from_components(s, rows);
}
[[nodiscard]] inline Metric metric_from_map(const CartesianMap& m, const CoordinateSystem& s) {
    return Metric::from_map(s, m);
}
[[nodiscard]] inline const Matrix& inverse_metric(const Metric& g) { return g.contravariant(); }
[[nodiscard]] inline const std::vector<Expr>& scale_factors(const Metric& g) { return g.scale_factors(); }

// Covariant basis E_i = dr/du^i as Cartesian columns; needs a map.
[[nodiscard]] std::vector<std::vector<Expr>> basis_vectors(const Metric& g);
// Contravariant basis E^i = g^ij E_j.
[[nodiscard]] std::vector<std::vector<Expr>> dual_basis_vectors(const Metric& g);

// Builtin registry: cartesian, cylindrical, spherical, minkowski, two_sphere.
[[nodiscard]] std::vector<std::string> builtin_names();
[[nodiscard]] Metric builtin_system(std::string_view name, std::uint64_t seed = kDefaultSeed, double tol = kDefaultTol);

}  // namespace tcalc
