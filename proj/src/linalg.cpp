#include "qchan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "eigen_bridge.hpp"
#include "qchan/kernels.hpp"

namespace qchan {

using detail::EigenCMatrix;
using detail::EigenRMatrix;

namespace {

// Reorders columns of `vectors` to follow `order`.
template <typename M>
M permute_columns(const M& vectors, const std::vector<std::size_t>& order) {
    M out(vectors.rows(), vectors.cols());
    for (std::size_t c = 0; c < order.size(); ++c)
        for (std::size_t r = 0; r < vectors.rows(); ++r) out(r, c) = vectors(r, order[c]);
    return out;
}

template <typename EigenSvd>
void check_svd(const EigenSvd& solver) {
    if (solver.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "SVD did not converge");
}

} // namespace

Eigensystem eig_hermitian(const HermitianMatrix& x) {
    if (!x.matrix().all_finite()) fail(ErrorKind::InvalidInput, "eig_hermitian: non-finite entries");
    if (x.dim() == 0) return {};
    Eigen::SelfAdjointEigenSolver<EigenCMatrix> solver(detail::to_eigen(x.matrix()));
    if (solver.info() != Eigen::Success)
        fail(ErrorKind::NumericalFailure, "hermitian eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    std::vector<double> raw(ev.data(), ev.data() + ev.size());
    const auto order = descending_order(raw);
    ComplexMatrix vectors = permute_columns(detail::from_eigen(solver.eigenvectors()), order);
    return {RealSpectrum(std::move(raw)), std::move(vectors)};
}

RealSpectrum eigenvalues(const HermitianMatrix& x) {
    if (!x.matrix().all_finite()) fail(ErrorKind::InvalidInput, "eigenvalues: non-finite entries");
    if (x.dim() == 0) return {};
    Eigen::SelfAdjointEigenSolver<EigenCMatrix> solver(detail::to_eigen(x.matrix()),
                                                       Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        fail(ErrorKind::NumericalFailure, "hermitian eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    return RealSpectrum(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

Svd svd(const ComplexMatrix& a) {
    if (!a.all_finite()) fail(ErrorKind::InvalidInput, "svd: non-finite entries");
    Eigen::BDCSVD<EigenCMatrix> solver(detail::to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    check_svd(solver);
    const auto& sv = solver.singularValues();
    std::vector<double> raw(sv.data(), sv.data() + sv.size());
    // Eigen already sorts descending; the stable reorder only pins tie handling.
    const auto order = descending_order(raw);
    auto full_order = [&](std::size_t total) {
        std::vector<std::size_t> o(order);
        for (std::size_t i = order.size(); i < total; ++i) o.push_back(i);
        return o;
    };
    ComplexMatrix left = permute_columns(detail::from_eigen(solver.matrixU()), full_order(a.rows()));
    ComplexMatrix right = permute_columns(detail::from_eigen(solver.matrixV()), full_order(a.cols()));
    return {RealSpectrum(std::move(raw)), std::move(left), std::move(right)};
}

RealSpectrum singular_values(const ComplexMatrix& a) {
    if (!a.all_finite()) fail(ErrorKind::InvalidInput, "singular_values: non-finite entries");
    Eigen::BDCSVD<EigenCMatrix> solver(detail::to_eigen(a));
    check_svd(solver);
    const auto& sv = solver.singularValues();
    return RealSpectrum(std::vector<double>(sv.data(), sv.data() + sv.size()));
}

RealSvd svd(const RealMatrix& a) {
    Eigen::BDCSVD<EigenRMatrix> solver(detail::to_eigen(a), Eigen::ComputeFullU | Eigen::ComputeFullV);
    check_svd(solver);
    const auto& sv = solver.singularValues();
    std::vector<double> raw(sv.data(), sv.data() + sv.size());
    const auto order = descending_order(raw);
    auto full_order = [&](std::size_t total) {
        std::vector<std::size_t> o(order);
        for (std::size_t i = order.size(); i < total; ++i) o.push_back(i);
        return o;
    };
    RealMatrix left = permute_columns(detail::from_eigen(EigenRMatrix(solver.matrixU())), full_order(a.rows()));
    RealMatrix right = permute_columns(detail::from_eigen(EigenRMatrix(solver.matrixV())), full_order(a.cols()));
    return {RealSpectrum(std::move(raw)), std::move(left), std::move(right)};
}

RealSpectrum singular_values(const RealMatrix& a) {
    Eigen::BDCSVD<EigenRMatrix> solver(detail::to_eigen(a));
    check_svd(solver);
    const auto& sv = solver.singularValues();
    return RealSpectrum(std::vector<double>(sv.data(), sv.data() + sv.size()));
}

std::size_t numerical_rank(const ComplexMatrix& a, double tol) {
    const auto s = singular_values(a);
    if (s.empty()) return 0;
    const double cutoff = tol * std::max(1.0, s.front());
    return static_cast<std::size_t>(
        std::count_if(s.values().begin(), s.values().end(), [&](double v) { return v > cutoff; }));
}

HermitianMatrix spectral_map(const Eigensystem& es, const std::function<double(double)>& f) {
    const std::size_t n = es.vectors.rows();
    // Scale each eigenvector column by f(lambda), then multiply by U^*.
    ComplexMatrix scaled = es.vectors;
    for (std::size_t c = 0; c < es.values.size(); ++c) {
        const double fc = f(es.values[c]);
        for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= fc;
    }
    return HermitianMatrix(scaled * es.vectors.adjoint());
}

double ky_fan_sum(const HermitianMatrix& x, std::size_t k) {
    if (k < 1 || k > x.dim())
        fail(ErrorKind::InvalidInput, "ky_fan_sum: k = " + std::to_string(k) +
                                          " outside [1, " + std::to_string(x.dim()) + "]");
    const auto ev = eigenvalues(x);
    double s = 0.0;
    for (std::size_t j = 0; j < k; ++j) s += ev[j];
    return s;
}

double from_nats(double nats, LogBase base) {
    return base == LogBase::Two ? nats / std::numbers::ln2 : nats;
}

double von_neumann_entropy(const HermitianMatrix& x, LogBase base) {
    const auto ev = eigenvalues(x);
    if (!ev.empty() && ev.back() < -kEntropyClampFloor)
        fail(ErrorKind::NotPositive, "von_neumann_entropy: eigenvalue " + std::to_string(ev.back()) +
                                         " below clamp floor");
    double h = 0.0;
    for (double v : ev.values())
        if (v > 0.0) h -= v * std::log(v);
    return from_nats(h, base);
}

double shannon_entropy(std::span<const double> p, LogBase base) {
    double h = 0.0;
    for (double v : p) {
        if (v < 0.0) fail(ErrorKind::InvalidInput, "shannon_entropy: negative entry");
        if (v > 0.0) h -= v * std::log(v);
    }
    return from_nats(h, base);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    const auto& kt = kernels::active_kernels();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0, 0.0)) continue;
            for (std::size_t r = 0; r < b.rows(); ++r) {
                Complex* dst = &out(i * b.rows() + r, j * b.cols());
                kt.caxpy(b.cols(), aij, b.row(r).data(), dst);
            }
        }
    return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

ComplexMatrix direct_sum(const ComplexMatrix& b, const ComplexMatrix& c) {
    ComplexMatrix out(b.rows() + c.rows(), b.cols() + c.cols());
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = b(i, j);
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = 0; j < c.cols(); ++j) out(b.rows() + i, b.cols() + j) = c(i, j);
    return out;
}

bool majorizes(std::span<const double> y, std::span<const double> x, double tol) {
    const std::size_t len = std::max(x.size(), y.size());
    std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
    xs.resize(len, 0.0);
    ys.resize(len, 0.0);
    std::sort(xs.begin(), xs.end(), std::greater<>());
    std::sort(ys.begin(), ys.end(), std::greater<>());
    double px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < len; ++i) {
        px += xs[i];
        py += ys[i];
        if (px > py + tol) return false;
    }
    return std::abs(px - py) <= tol;
}

HermBasis::HermBasis(std::size_t n) : n_(n) {
    if (n == 0) fail(ErrorKind::InvalidInput, "herm_basis: dimension must be at least 1");
    elements_.reserve(n * n);
    elements_.push_back((1.0 / std::sqrt(static_cast<double>(n))) * HermitianMatrix::identity(n));
    for (std::size_t k = 1; k < n; ++k) {
        // (E_11 + ... + E_kk - k E_{k+1,k+1}) / sqrt(k(k+1))
        std::vector<double> d(n, 0.0);
        const double norm = std::sqrt(static_cast<double>(k * (k + 1)));
        for (std::size_t j = 0; j < k; ++j) d[j] = 1.0 / norm;
        d[k] = -static_cast<double>(k) / norm;
        elements_.push_back(HermitianMatrix::diagonal(d));
    }
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j + 1; k < n; ++k) {
            ComplexMatrix sym(n, n), asym(n, n);
            sym(j, k) = r;
            sym(k, j) = r;
            asym(j, k) = Complex(0.0, r);
            asym(k, j) = Complex(0.0, -r);
            elements_.emplace_back(sym);
            elements_.emplace_back(asym);
        }
}

HermBasis herm_basis(std::size_t n) { return HermBasis(n); }

std::vector<double> vectorize(const HermitianMatrix& x, const HermBasis& basis) {
    if (x.dim() != basis.dim())
        fail(ErrorKind::DimensionMismatch, "vectorize: matrix dim " + std::to_string(x.dim()) +
                                               " vs basis dim " + std::to_string(basis.dim()));
    std::vector<double> c(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) c[i] = trace_product(basis[i], x);
    return c;
}

HermitianMatrix devectorize(std::span<const double> coords, const HermBasis& basis) {
    if (coords.size() != basis.size())
        fail(ErrorKind::DimensionMismatch, "devectorize: " + std::to_string(coords.size()) +
                                               " coordinates for a basis of " +
                                               std::to_string(basis.size()));
    const auto& kt = kernels::active_kernels();
    ComplexMatrix acc(basis.dim(), basis.dim());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (coords[i] == 0.0) continue;
        const auto src = basis[i].matrix().entries();
        kt.caxpy(src.size(), coords[i], src.data(), acc.entries().data());
    }
    return HermitianMatrix(acc);
}

} // namespace qchan
