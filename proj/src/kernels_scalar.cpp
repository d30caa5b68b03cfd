#include "qchan/kernels.hpp"

namespace qchan::kernels {
namespace {

void caxpy_scalar(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = Complex(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
    }
}

Complex cdotc_scalar(std::size_t n, const Complex* x, const Complex* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

void dscal_copy_scalar(std::size_t n, double alpha, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha * x[i];
}

double cnorm2_scalar(std::size_t n, const Complex* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

} // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", caxpy_scalar, cdotc_scalar, dscal_copy_scalar,
                                   cnorm2_scalar};
    return table;
}

} // namespace qchan::kernels
