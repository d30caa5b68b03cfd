// Compiled with -mavx2 -mfma. Nothing in here may run before the dispatcher
// has confirmed the CPU features.
#include "qchan/kernels.hpp"

#if defined(QCHAN_HAVE_AVX2)
#include <immintrin.h>

namespace qchan::kernels {
namespace {

// A complex<double> is two packed doubles, so one __m256d holds two elements.
static_assert(sizeof(Complex) == 2 * sizeof(double));

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void caxpy_avx2(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d xs = _mm256_permute_pd(xv, 0b0101); // (im, re) pairs
        // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
        const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, xs));
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(_mm256_loadu_pd(yp + 2 * i), prod));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = Complex(y[i].real() + (alpha.real() * xr - alpha.imag() * xi),
                       y[i].imag() + (alpha.real() * xi + alpha.imag() * xr));
    }
}

Complex cdotc_avx2(std::size_t n, const Complex* x, const Complex* y) {
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    __m256d re_acc = _mm256_setzero_pd(); // xr*yr, xi*yi
    __m256d im_acc = _mm256_setzero_pd(); // xr*yi, xi*yr (sign fixed below)
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        re_acc = _mm256_fmadd_pd(xv, yv, re_acc);
        im_acc = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), im_acc);
    }
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    double re = hsum(re_acc);
    double im = hsum(_mm256_mul_pd(im_acc, sign));
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

void dscal_copy_avx2(std::size_t n, double alpha, const double* x, double* y) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = alpha * x[i];
}

double cnorm2_avx2(std::size_t n, const Complex* x) {
    const double* xp = reinterpret_cast<const double*>(x);
    const std::size_t len = 2 * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= len; i += 4) {
        const __m256d v = _mm256_loadu_pd(xp + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < len; ++i) s += xp[i] * xp[i];
    return s;
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable table{"avx2", caxpy_avx2, cdotc_avx2, dscal_copy_avx2, cnorm2_avx2};
    return table;
}

} // namespace qchan::kernels
#endif
