#include "tensorcalc/evaluate.hpp"
#include "tensorcalc/kernels.hpp"

#include <cmath>

namespace tcalc {

namespace {

// Matches the semantics of the packed max instructions.
inline double vmax(double a, double b) { return a > b ? a : b; }

void add(const double* a, const double* b, double* o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) o[i] = a[i] + b[i];
}
void sub(const double* a, const double* b, double* o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) o[i] = a[i] - b[i];
}
void mul(const double* a, const double* b, double* o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) o[i] = a[i] * b[i];
}
void div(const double* a, const double* b, double* o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) o[i] = a[i] / b[i];
}
void sqrt_(const double* a, double* o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) o[i] = std::sqrt(a[i]);
}
void powi_(const double* a, unsigned k, double* o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) o[i] = powi(a[i], k);
}
void fill(double v, double* o, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) o[i] = v;
}
void residual(const double* a, const double* b, double* r, double* s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double fa = std::fabs(a[i]), fb = std::fabs(b[i]);
        r[i] = std::fabs(a[i] - b[i]);
        s[i] = vmax(vmax(1.0, fa), fb);
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable t{"scalar", add, sub, mul, div, sqrt_, powi_, fill, residual};
    return t;
}

}  // namespace tcalc
