#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/invariants.hpp"
#include "qchan/linalg.hpp"
#include "qchan/random.hpp"

namespace qchan::test {

inline const double kLog2 = std::log(2.0);

// Kraus a_1 = (1/sqrt2, 0)^T, a_2 = (0, 1/sqrt2)^T: a channel from 1x1 to 2x2 matrices.
inline QuantumChannel example1() {
    const double h = 1.0 / std::sqrt(2.0);
    return make_channel({ComplexMatrix(2, 1, {h, 0.0}), ComplexMatrix(2, 1, {0.0, h})});
}

// Row Kraus operators e_i^T: X -> tr X from n x n to 1x1.
inline QuantumChannel example2(std::size_t n = 2) {
    std::vector<ComplexMatrix> kraus;
    for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix row(1, n);
        row(0, i) = 1.0;
        kraus.push_back(row);
    }
    return make_channel(std::move(kraus));
}

// Kraus {E_jk / sqrt(n)}: X -> (tr X) I / n.
inline QuantumChannel depolarizing(std::size_t n) {
    std::vector<ComplexMatrix> kraus;
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            ComplexMatrix e(n, n);
            e(j, k) = s;
            kraus.push_back(e);
        }
    return make_channel(std::move(kraus));
}

// random_channel with l raised to ceil(n / m) so the shape admits a channel.
inline QuantumChannel feasible_channel(std::size_t n, std::size_t m, std::size_t l, Rng& rng) {
    return random_channel(n, m, std::max(l, (n + m - 1) / m), rng);
}

inline HermitianMatrix random_hermitian(std::size_t n, Rng& rng) {
    return HermitianMatrix(gaussian_matrix(n, n, rng));
}

inline HermitianMatrix random_density(std::size_t n, Rng& rng) {
    const ComplexMatrix g = gaussian_matrix(n, n, rng);
    const ComplexMatrix p = g * g.adjoint();
    return (1.0 / p.trace().real()) * HermitianMatrix(p);
}

inline std::vector<Complex> random_unit(std::size_t n, Rng& rng) {
    std::vector<Complex> x(n);
    double s = 0.0;
    for (auto& v : x) {
        v = rng.complex_normal();
        s += std::norm(v);
    }
    for (auto& v : x) v /= std::sqrt(s);
    return x;
}

// Largest eigenvalue by power iteration on X + shift I; independent of the Eigen path.
inline double power_lambda1(const HermitianMatrix& x, std::size_t iters = 4000) {
    const std::size_t n = x.dim();
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) shift += std::abs(x(i, j));
    std::vector<Complex> v(n, 1.0), w(n);
    for (std::size_t i = 0; i < n; ++i) v[i] += 0.1 * static_cast<double>(i);
    double lambda = 0.0;
    for (std::size_t it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = shift * v[i];
            for (std::size_t j = 0; j < n; ++j) w[i] += x(i, j) * v[j];
        }
        double nrm = 0.0;
        for (auto c : w) nrm += std::norm(c);
        nrm = std::sqrt(nrm);
        Complex rq = 0.0;
        for (std::size_t i = 0; i < n; ++i) rq += std::conj(v[i]) * w[i];
        lambda = rq.real() - shift;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nrm;
    }
    return lambda;
}

inline double direct_shannon(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0) h -= v * std::log(v);
    return h;
}

// Sorted descending copy.
inline std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

} // namespace qchan::test
