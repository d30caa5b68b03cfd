#include "qchan/kernels.hpp"

#include <cstdlib>
#include <string>

namespace qchan::kernels {

#if defined(QCHAN_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(QCHAN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? &avx2_table() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active_kernels() {
    static const KernelTable& chosen = [] () -> const KernelTable& {
        const char* env = std::getenv("QCHAN_SIMD");
        if (env != nullptr && std::string(env) == "scalar") return scalar_kernels();
        if (const KernelTable* t = avx2_kernels()) return *t;
        return scalar_kernels();
    }();
    return chosen;
}

void cgemm(const KernelTable& kt, std::size_t m, std::size_t k, std::size_t n,
           const Complex* a, const Complex* b, Complex* c) {
    for (std::size_t i = 0; i < m * n; ++i) c[i] = Complex(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        Complex* crow = c + i * n;
        for (std::size_t p = 0; p < k; ++p) {
            const Complex aip = a[i * k + p];
            if (aip == Complex(0.0, 0.0)) continue;
            kt.caxpy(n, aip, b + p * n, crow);
        }
    }
}

} // namespace qchan::kernels
