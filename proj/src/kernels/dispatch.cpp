#include "tensorcalc/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace tcalc {

#if defined(TENSORCALC_HAVE_AVX2)
const KernelTable* avx2_kernels_impl();
#endif
#if defined(TENSORCALC_HAVE_NEON)
const KernelTable* neon_kernels_impl();
#endif

const KernelTable* avx2_kernels() {
#if defined(TENSORCALC_HAVE_AVX2)
    static const bool ok = __builtin_cpu_supports("avx2");
    return ok ? avx2_kernels_impl() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(TENSORCALC_HAVE_NEON)
    return neon_kernels_impl();  // baseline on aarch64
#else
    return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
    std::vector<const KernelTable*> out{&scalar_kernels()};
    if (const auto* k = avx2_kernels()) out.push_back(k);
    if (const auto* k = neon_kernels()) out.push_back(k);
    return out;
}

const KernelTable& active_kernels() {
    static const KernelTable* chosen = [] {
        const char* env = std::getenv("TENSORCALC_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return &scalar_kernels();
        if (const auto* k = avx2_kernels()) return k;
        if (const auto* k = neon_kernels()) return k;
        return &scalar_kernels();
    }();
    return *chosen;
}

}  // namespace tcalc
