#pragma once

// Hermitian eigendecomposition, SVD, Kronecker and direct-sum constructions,
// entropies, Ky-Fan sums, majorization, and the hermitian orthonormal basis.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qchan/matrix.hpp"

namespace qchan {

// Eigenvalues in [-kEntropyClampFloor, 0) count as zero inside entropies.
inline constexpr double kEntropyClampFloor = 1e-10;

enum class LogBase { Natural, Two };

struct Eigensystem {
    RealSpectrum values;
    ComplexMatrix vectors; // column i belongs to values[i]
};

// Throws InvalidInput on non-finite entries.
Eigensystem eig_hermitian(const HermitianMatrix& x);
RealSpectrum eigenvalues(const HermitianMatrix& x);

// A * right.col(i) = values[i] * left.col(i). left is rows x rows, right is cols x cols.
struct Svd {
    RealSpectrum values; // length min(rows, cols)
    ComplexMatrix left;
    ComplexMatrix right;
};

Svd svd(const ComplexMatrix& a);
RealSpectrum singular_values(const ComplexMatrix& a);

struct RealSvd {
    RealSpectrum values;
    RealMatrix left;
    RealMatrix right;
};

RealSvd svd(const RealMatrix& a);
RealSpectrum singular_values(const RealMatrix& a);

std::size_t numerical_rank(const ComplexMatrix& a, double tol = 1e-10);

// U f(Lambda) U^* for the given eigensystem.
HermitianMatrix spectral_map(const Eigensystem& es, const std::function<double(double)>& f);

// Sum of the k largest eigenvalues. Throws InvalidInput unless 1 <= k <= dim.
double ky_fan_sum(const HermitianMatrix& x, std::size_t k);

// -tr X log X. Throws NotPositive if an eigenvalue is below -kEntropyClampFloor.
double von_neumann_entropy(const HermitianMatrix& x, LogBase base = LogBase::Natural);
double shannon_entropy(std::span<const double> p, LogBase base = LogBase::Natural);

// Converts a value in nats to the requested base.
double from_nats(double nats, LogBase base);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);
ComplexMatrix direct_sum(const ComplexMatrix& b, const ComplexMatrix& c);

// True iff x is majorized by y (x ≺ y): both sorted descending after zero padding,
// every prefix sum of x is at most that of y and the totals agree, within tol.
bool majorizes(std::span<const double> y, std::span<const double> x, double tol = 1e-9);

// Orthonormal basis of the hermitian n x n matrices under <X, Y> = tr(XY):
// I/sqrt(n), then the traceless diagonal elements, then for each j < k the
// symmetric (E_jk + E_kj)/sqrt(2) and antisymmetric i(E_jk - E_kj)/sqrt(2) pair.
class HermBasis {
public:
    explicit HermBasis(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const HermitianMatrix& operator[](std::size_t i) const { return elements_[i]; }
    std::span<const HermitianMatrix> elements() const noexcept { return elements_; }

private:
    std::size_t n_;
    std::vector<HermitianMatrix> elements_;
};

HermBasis herm_basis(std::size_t n);

// Coordinates c_i = tr(X U_i).
std::vector<double> vectorize(const HermitianMatrix& x, const HermBasis& basis);
HermitianMatrix devectorize(std::span<const double> coords, const HermBasis& basis);

} // namespace qchan
