#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace tcalc {

// Lane-wise primitives used by the batched evaluator. Every variant must
// produce bit-identical results to the scalar reference.
struct KernelTable {
    std::string_view name;
    void (*add)(const double* a, const double* b, double* out, std::size_t n);
    void (*sub)(const double* a, const double* b, double* out, std::size_t n);
    void (*mul)(const double* a, const double* b, double* out, std::size_t n);
    void (*div)(const double* a, const double* b, double* out, std::size_t n);
    void (*sqrt)(const double* a, double* out, std::size_t n);
    // out = a^k for k >= 0, repeated squaring
    void (*powi)(const double* a, unsigned k, double* out, std::size_t n);
    void (*fill)(double v, double* out, std::size_t n);
    // residual = |a - b|, scale = max(1, |a|, |b|)
    void (*residual)(const double* a, const double* b, double* residual, double* scale, std::size_t n);
};

[[nodiscard]] const KernelTable& scalar_kernels();
// nullptr when the variant is not compiled in or the CPU lacks it
[[nodiscard]] const KernelTable* avx2_kernels();
[[nodiscard]] const KernelTable* neon_kernels();

// Widest supported variant; TENSORCALC_KERNELS=scalar forces the reference.
[[nodiscard]] const KernelTable& active_kernels();
[[nodiscard]] std::vector<const KernelTable*> available_kernels();

}  // namespace tcalc
