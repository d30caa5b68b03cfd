#include "qchan/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qchan/kernels.hpp"

namespace qchan {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        fail(ErrorKind::DimensionMismatch,
             std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                 std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                 std::to_string(b.cols()) + " differ");
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        fail(ErrorKind::InvalidInput, "matrix entry count " + std::to_string(data_.size()) +
                                          " does not match " + std::to_string(rows) + "x" +
                                          std::to_string(cols));
    if (!all_finite()) fail(ErrorKind::InvalidInput, "matrix has non-finite entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> v) {
    return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out(*this);
    for (auto& z : out.data_) z = std::conj(z);
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    return std::sqrt(kernels::active_kernels().cnorm2(data_.size(), data_.data()));
}

bool ComplexMatrix::all_finite() const { return std::all_of(data_.begin(), data_.end(), finite); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "add");
    kernels::active_kernels().caxpy(data_.size(), 1.0, other.data_.data(), data_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "subtract");
    kernels::active_kernels().caxpy(data_.size(), -1.0, other.data_.data(), data_.data());
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        fail(ErrorKind::DimensionMismatch,
             "multiply: inner dimensions " + std::to_string(a.cols()) + " and " +
                 std::to_string(b.rows()) + " differ");
    ComplexMatrix c(a.rows(), b.cols());
    kernels::cgemm(kernels::active_kernels(), a.rows(), a.cols(), b.cols(), a.entries().data(),
                   b.entries().data(), c.entries().data());
    return c;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows())
        fail(ErrorKind::DimensionMismatch, "adjoint_times: row counts differ");
    // (A^* B)_{ij} = sum_p conj(a_pi) b_pj: accumulate row p of B into row i.
    const auto& kt = kernels::active_kernels();
    ComplexMatrix c(a.cols(), b.cols());
    for (std::size_t p = 0; p < a.rows(); ++p) {
        const Complex* brow = b.entries().data() + p * b.cols();
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex api = std::conj(a(p, i));
            if (api == Complex(0.0, 0.0)) continue;
            kt.caxpy(b.cols(), api, brow, c.entries().data() + i * b.cols());
        }
    }
    return c;
}

Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "frobenius_inner");
    return kernels::active_kernels().cdotc(a.entries().size(), a.entries().data(),
                                           b.entries().data());
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double d = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    return d;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) : m_(m.rows(), m.cols()) {
    if (!m.is_square())
        fail(ErrorKind::DimensionMismatch, "hermitian matrix must be square, got " +
                                               std::to_string(m.rows()) + "x" +
                                               std::to_string(m.cols()));
    if (!m.all_finite()) fail(ErrorKind::InvalidInput, "hermitian matrix has non-finite entries");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        m_(i, i) = Complex(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m_(i, j) = z;
            m_(j, i) = std::conj(z);
        }
    }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
    return HermitianMatrix(ComplexMatrix::identity(n));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::outer(std::span<const Complex> x) {
    ComplexMatrix m(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) m(i, j) = x[i] * std::conj(x[j]);
    return HermitianMatrix(m);
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(a.matrix() + b.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
    return HermitianMatrix(a.matrix() * Complex(s, 0.0));
}

double trace_product(const HermitianMatrix& x, const HermitianMatrix& y) {
    return frobenius_inner(x.matrix(), y.matrix()).real();
}

std::vector<std::size_t> descending_order(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return idx;
}

RealSpectrum::RealSpectrum(std::vector<double> values) {
    const auto order = descending_order(values);
    values_.reserve(values.size());
    for (std::size_t i : order) values_.push_back(values[i]);
}

} // namespace qchan
