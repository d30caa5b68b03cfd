#pragma once

// Inner-loop kernels for dense complex arithmetic.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2/FMA variant compiled in its own translation unit. The variant used by
// the rest of the library is chosen once per process from CPUID; setting
// QCHAN_SIMD=scalar in the environment forces the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace qchan::kernels {

using Complex = std::complex<double>;

struct KernelTable {
    std::string_view name;

    // y[i] += alpha * x[i]
    void (*caxpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);

    // sum_i conj(x[i]) * y[i]
    Complex (*cdotc)(std::size_t n, const Complex* x, const Complex* y);

    // y[i] = alpha * x[i] over reals
    void (*dscal_copy)(std::size_t n, double alpha, const double* x, double* y);

    // sum_i |x[i]|^2
    double (*cnorm2)(std::size_t n, const Complex* x);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks the features.
const KernelTable* avx2_kernels();

// The table selected for this process.
const KernelTable& active_kernels();

// Row-major C (m x n) = A (m x k) * B (k x n), built on caxpy.
void cgemm(const KernelTable& kt, std::size_t m, std::size_t k, std::size_t n,
           const Complex* a, const Complex* b, Complex* c);

} // namespace qchan::kernels
