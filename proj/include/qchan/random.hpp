#pragma once

// Seeded generators for Haar unitaries, simplex points and random channels.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "qchan/channel.hpp"

namespace qchan {

// Mersenne-Twister stream whose seed is the only state that matters. Children
// are derived by hashing (seed, label) so independent consumers never share
// a stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }
    Rng child(std::string_view label) const;
    Rng child(std::uint64_t index) const;
    Rng child(std::string_view label, std::uint64_t index) const;

    double normal();
    double uniform();
    double exponential();
    // Standard complex Gaussian: real and imaginary parts N(0, 1/2).
    Complex complex_normal();

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);

// Parses decimal or 0x-prefixed hexadecimal. Throws InvalidInput.
std::uint64_t parse_seed(std::string_view text);

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

// Haar-distributed unitary: QR of a complex Gaussian with R's diagonal phases divided out.
ComplexMatrix haar_unitary(std::size_t n, Rng& rng);

// Uniform on the probability simplex (normalized exponentials).
std::vector<double> random_probability_vector(std::size_t l, Rng& rng);

// Kraus t_i Q_i with t_i^2 from random_probability_vector and Q_i Haar.
QuantumChannel random_unitary_channel(std::size_t n, std::size_t l, Rng& rng);

// renormalize_kraus over l independent m x n complex Gaussian matrices. Requires l * m >= n,
// since sum B_i^* B_i has rank at most l * m.
QuantumChannel random_channel(std::size_t n, std::size_t m, std::size_t l, Rng& rng);

// renormalize_kraus({A_i + magnitude * G_i}) with G_i complex Gaussian.
QuantumChannel perturb_channel(const QuantumChannel& tau, double magnitude, Rng& rng);

} // namespace qchan
