#include "tensorcalc/evaluate.hpp"
#include "tensorcalc/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace tcalc {

namespace {

inline double vmax(double a, double b) { return a > b ? a : b; }

template <typename V, typename S>
inline void binary(const double* a, const double* b, double* o, std::size_t n, V vop, S sop) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(o + i, vop(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) o[i] = sop(a[i], b[i]);
}

void add(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](__m256d x, __m256d y) { return _mm256_add_pd(x, y); }, [](double x, double y) { return x + y; });
}
void sub(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](__m256d x, __m256d y) { return _mm256_sub_pd(x, y); }, [](double x, double y) { return x - y; });
}
void mul(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](__m256d x, __m256d y) { return _mm256_mul_pd(x, y); }, [](double x, double y) { return x * y; });
}
void div(const double* a, const double* b, double* o, std::size_t n) {
    binary(a, b, o, n, [](__m256d x, __m256d y) { return _mm256_div_pd(x, y); }, [](double x, double y) { return x / y; });
}

void sqrt_(const double* a, double* o, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(o + i, _mm256_sqrt_pd(_mm256_loadu_pd(a + i)));
    for (; i < n; ++i) o[i] = std::sqrt(a[i]);
}

void powi_(const double* a, unsigned k, double* o, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(a + i);
        __m256d r = _mm256_set1_pd(1.0);
        unsigned m = k;
        while (m != 0) {
            if (m & 1u) r = _mm256_mul_pd(r, x);
            m >>= 1u;
            if (m != 0) x = _mm256_mul_pd(x, x);
        }
        _mm256_storeu_pd(o + i, r);
    }
    for (; i < n; ++i) o[i] = powi(a[i], k);
}

void fill(double v, double* o, std::size_t n) {
    std::size_t i = 0;
    __m256d x = _mm256_set1_pd(v);
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(o + i, x);
    for (; i < n; ++i) o[i] = v;
}

void residual(const double* a, const double* b, double* r, double* s, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    const __m256d one = _mm256_set1_pd(1.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d x = _mm256_loadu_pd(a + i);
        __m256d y = _mm256_loadu_pd(b + i);
        _mm256_storeu_pd(r + i, _mm256_andnot_pd(sign, _mm256_sub_pd(x, y)));
        __m256d m = _mm256_max_pd(_mm256_max_pd(one, _mm256_andnot_pd(sign, x)), _mm256_andnot_pd(sign, y));
        _mm256_storeu_pd(s + i, m);
    }
    for (; i < n; ++i) {
        r[i] = std::fabs(a[i] - b[i]);
        s[i] = vmax(vmax(1.0, std::fabs(a[i])), std::fabs(b[i]));
    }
}

}  // namespace

const KernelTable* avx2_kernels_impl() {
    static const KernelTable t{"avx2", add, sub, mul, div, sqrt_, powi_, fill, residual};
    return &t;
}

}  // namespace tcalc
