#pragma once

// The two multiplicative channel invariants lambda_1(A(tau)) and sigma_1(tau),
// and the minimum-output-entropy lower bounds built from them.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qchan/channel.hpp"

namespace qchan {

// Default ceiling on the number of eigenvalues of A^{(x)p} formed by f_bound_tensor.
inline constexpr std::size_t kDefaultEigenProductCap = std::size_t{1} << 20;

double lambda1_a(const QuantumChannel& tau);

// Singular values of the real superoperator, length min(n^2, m^2).
RealSpectrum channel_singular_values(const QuantumChannel& tau);

// max(-log lambda_1(A(tau)), -log sigma_1(tau)) in nats. Returned even when <= 0.
double hr_lower_bound(const QuantumChannel& tau);

// The refined bound from the spectrum of A(tau). m' is the least count whose
// leading eigenvalues sum to at least one; eta is what remains of unit mass
// after the first m' - 1 of them.
struct FBound {
    std::size_t m_prime = 1;
    double eta = 0.0;
    double value = 0.0;                // nats
    std::vector<double> lambda_prefix; // lambda_1 .. lambda_{m'-1}

    friend bool operator==(const FBound&, const FBound&) = default;
};

// lambda must be nonnegative and nonincreasing. Throws InvalidInput otherwise, or
// when lambda_1 < 1 but the total mass is below one (m' would not exist).
FBound f_bound(std::span<const double> lambda);
FBound f_bound(const RealSpectrum& lambda);

struct FBoundSequence {
    std::vector<std::pair<std::size_t, double>> per_p; // (p, F(A^{(x)p}) / p)
    std::vector<double> running_max;
    bool truncated = false; // stopped early because m^p exceeded the cap

    friend bool operator==(const FBoundSequence&, const FBoundSequence&) = default;
};

// Uses sorted p-fold products of the eigenvalues of A(tau); never forms A^{(x)p}.
FBoundSequence f_bound_tensor(const QuantumChannel& tau, std::size_t p_max,
                              std::size_t dim_cap = kDefaultEigenProductCap);
FBoundSequence f_bound_tensor(const RealSpectrum& lambda, std::size_t p_max,
                              std::size_t dim_cap = kDefaultEigenProductCap);

// -1/2 log(sigma_2^2 + (1 - sigma_2^2) / n^p), a lower bound on H(tau^{(x)p}) for
// bi-quantum tau. Throws Inapplicable unless tau is bi-quantum with n >= 2.
double bi_channel_entropy_bound(const QuantumChannel& tau, std::size_t p);
double bi_channel_entropy_bound(double sigma2, std::size_t n, std::size_t p);

// (sigma_2(t1 (x) t2) computed directly, max(sigma_2(t1), sigma_2(t2))).
std::pair<double, double> sigma2_tensor_check(const QuantumChannel& t1, const QuantumChannel& t2);

struct InvariantReport {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t l = 0;
    double lambda1_A = 0.0;
    RealSpectrum sigma;
    double log_lambda1_A = 0.0;
    double log_sigma1 = 0.0;
    double hr_lower = 0.0;
    bool hr_nontrivial = false; // min(lambda_1, sigma_1) < 1 - 1e-9
    FBound f_bound;
    FBoundSequence f_bound_per_p;
    std::optional<double> bi_bound; // p = 1, present for bi-quantum channels with n >= 2
    ChannelFlags flags;

    friend bool operator==(const InvariantReport&, const InvariantReport&) = default;
};

InvariantReport full_report(const QuantumChannel& tau, std::size_t p_max,
                            std::size_t dim_cap = kDefaultEigenProductCap);

} // namespace qchan
