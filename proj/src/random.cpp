#include "qchan/random.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/QR>

#include "eigen_bridge.hpp"

namespace qchan {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    return splitmix64(splitmix64(seed) ^ salt);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::child(std::string_view label) const { return Rng(derive_seed(seed_, fnv1a(label))); }

Rng Rng::child(std::uint64_t index) const { return Rng(derive_seed(seed_, splitmix64(index))); }

Rng Rng::child(std::string_view label, std::uint64_t index) const {
    return child(label).child(index);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

double Rng::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

double Rng::exponential() { return std::exponential_distribution<double>(1.0)(engine_); }

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t parse_seed(std::string_view text) {
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        text.remove_prefix(2);
        base = 16;
    }
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v, base);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        fail(ErrorKind::InvalidInput, "invalid seed '" + std::string(text) + "'");
    return v;
}

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    ComplexMatrix g(rows, cols);
    for (auto& z : g.entries()) z = rng.complex_normal();
    return g;
}

ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    if (n == 0) fail(ErrorKind::InvalidInput, "haar_unitary: n must be at least 1");
    Eigen::HouseholderQR<detail::EigenCMatrix> qr(detail::to_eigen(gaussian_matrix(n, n, rng)));
    detail::EigenCMatrix q = qr.householderQ();
    const detail::EigenCMatrix& r = qr.matrixQR();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
        q.col(j) *= phase;
    }
    return detail::from_eigen(q);
}

std::vector<double> random_probability_vector(std::size_t l, Rng& rng) {
    if (l == 0) fail(ErrorKind::InvalidInput, "random_probability_vector: l must be at least 1");
    std::vector<double> p(l);
    double total = 0.0;
    for (auto& v : p) {
        do v = rng.exponential(); while (v <= 0.0);
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

QuantumChannel random_unitary_channel(std::size_t n, std::size_t l, Rng& rng) {
    const auto p = random_probability_vector(l, rng);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(l);
    for (std::size_t i = 0; i < l; ++i)
        kraus.push_back(haar_unitary(n, rng) * Complex(std::sqrt(p[i]), 0.0));
    return QuantumChannel(std::move(kraus));
}

QuantumChannel random_channel(std::size_t n, std::size_t m, std::size_t l, Rng& rng) {
    if (n == 0 || m == 0 || l == 0)
        fail(ErrorKind::InvalidInput, "random_channel: dimensions must be at least 1");
    if (l * m < n)
        fail(ErrorKind::InvalidInput, "random_channel: l * m must be at least n for a trace-preserving channel");
    for (int attempt = 0;; ++attempt) {
        std::vector<ComplexMatrix> b;
        b.reserve(l);
        for (std::size_t i = 0; i < l; ++i) b.push_back(gaussian_matrix(m, n, rng));
        try {
            return renormalize_kraus(b);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CannotRenormalize || attempt > 0) throw;
        }
    }
}

QuantumChannel perturb_channel(const QuantumChannel& tau, double magnitude, Rng& rng) {
    if (!(magnitude >= 0.0)) fail(ErrorKind::InvalidInput, "perturb_channel: magnitude must be >= 0");
    for (int attempt = 0;; ++attempt) {
        std::vector<ComplexMatrix> b;
        b.reserve(tau.kraus_count());
        for (const auto& a : tau.kraus())
            b.push_back(a + gaussian_matrix(a.rows(), a.cols(), rng) * Complex(magnitude, 0.0));
        try {
            return renormalize_kraus(b);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CannotRenormalize || attempt > 0) throw;
        }
    }
}

} // namespace qchan
