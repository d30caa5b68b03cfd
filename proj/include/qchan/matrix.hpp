#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qchan/error.hpp"

namespace qchan {

using Complex = std::complex<double>;

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    // Throws InvalidInput when the entry count is wrong or an entry is not finite.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    // Column vector from entries.
    static ComplexMatrix column(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }
    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conj() const;
    ComplexMatrix transpose() const;

    Complex trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

// A^* B without forming A^*.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);

// sum_ij conj(a_ij) b_ij; equals tr(A B) when A is hermitian.
Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Largest |a_ij - b_ij|; shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Square matrix equal to its adjoint. Construction symmetrizes (X + X^*)/2.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const ComplexMatrix& m);

    static HermitianMatrix identity(std::size_t n);
    static HermitianMatrix diagonal(std::span<const double> d);
    // x x^* for a column of entries.
    static HermitianMatrix outer(std::span<const Complex> x);

    std::size_t dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    double trace() const { return m_.trace().real(); }
    double frobenius_norm() const { return m_.frobenius_norm(); }

    friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

private:
    ComplexMatrix m_;
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

// tr(X Y), real for hermitian arguments.
double trace_product(const HermitianMatrix& x, const HermitianMatrix& y);

// Real values held in nonincreasing order.
class RealSpectrum {
public:
    RealSpectrum() = default;
    // Stable descending sort: equal values keep their input order.
    explicit RealSpectrum(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }
    double front() const { return values_.front(); }
    double back() const { return values_.back(); }
    std::span<const double> values() const& noexcept { return values_; }
    // A temporary spectrum hands out its storage so range-for over it stays valid.
    std::vector<double> values() && noexcept { return std::move(values_); }
    const std::vector<double>& vector() const noexcept { return values_; }

    friend bool operator==(const RealSpectrum&, const RealSpectrum&) = default;

private:
    std::vector<double> values_;
};

// Descending-sort permutation with ties broken by lower original index.
std::vector<std::size_t> descending_order(std::span<const double> values);

} // namespace qchan

namespace qchan {

// Dense row-major real matrix; used for superoperators on hermitian coordinates.
class RealMatrix {
public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const double> entries() const noexcept { return data_; }

    friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

} // namespace qchan
