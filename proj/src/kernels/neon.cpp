#include "tensorcalc/evaluate.hpp"
#include "tensorcalc/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace tcalc {

namespace {

inline double vmax(double a, double b) { return a > b ? a : b; }

template <typename V, typename S>
inline void binary(const double* a, const double* b, double* o, std::size_t n, V vop, S sop) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(o + i, vop(vld1q_f64(a + i), vld1q_f64(b + i)));
    for (; i < n; ++i) o[i] = sop(a[i], b[i]);
}

void add(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](float64x2_t x, float64x2_t y) { return vaddq_f64(x, y); }, [](double x, double y) { return x + y; });
}
void sub(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](float64x2_t x, float64x2_t y) { return vsubq_f64(x, y); }, [](double x, double y) { return x - y; });
}
void mul(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](float64x2_t x, float64x2_t y) { return vmulq_f64(x, y); }, [](double x, double y) { return x * y; });
}
void div(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](float64x2_t x, float64x2_t y) { return vdivq_f64(x, y); }, [](double x, double y) { return x / y; });
}

void sqrt_(const double* a, double* o, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) vst1q_f64(o + i, vsqrtq_f64(vld1q_f64(a + i)));
    for (; i < n; ++i) o[i] = std::sqrt(a[i]);
}

void powi_(const double* a, unsigned k, double* o, std::size_t n) {
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t x = vld1q_f64(a + i);
        float64x2_t r = vdupq_n_f64(1.0);
        unsigned m = k;
        while (m != 0) {
            if (m & 1u) r = vmulq_f64(r, x);
            m >>= 1u;
            if (m != 0) x = vmulq_f64(x, x);
        }
        vst1q_f64(o + i, r);
    }
    for (; i < n; ++i) o[i] = powi(a[i], k);
}

void fill(double v, double* o, std::size_t n) {
    std::size_t i = 0;
    float64x2_t x = vdupq_n_f64(v);
    for (; i + 2 <= n; i += 2) vst1q_f64(o + i, x);
    for (; i < n; ++i) o[i] = v;
}

// vmaxq_f64 propagates NaN differently from the scalar select, so compare explicitly.
inline float64x2_t select_max(float64x2_t a, float64x2_t b) { return vbslq_f64(vcgtq_f64(a, b), a, b); }

void residual(const double* a, const double* b, double* r, double* s, std::size_t n) {
    const float64x2_t one = vdupq_n_f64(1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t x = vld1q_f64(a + i);
        float64x2_t y = vld1q_f64(b + i);
        vst1q_f64(r + i, vabsq_f64(vsubq_f64(x, y)));
        vst1q_f64(s + i, select_max(select_max(one, vabsq_f64(x)), vabsq_f64(y)));
    }
    for (; i < n; ++i) {
        r[i] = std::fabs(a[i] - b[i]);
        s[i] = vmax(vmax(1.0, std::fabs(a[i])), std::fabs(b[i]));
    }
}

}  // namespace

const KernelTable* neon_kernels_impl() {
    static const KernelTable t{"neon", add, sub, mul, div, sqrt_, powi_, fill, residual};
    return &t;
}

}  // namespace tcalc
