#pragma once

// Minimum output entropy estimates by multistart projected gradient descent
// over pure input states, and Ky-Fan output maxima.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "qchan/channel.hpp"

namespace qchan {

inline constexpr std::size_t kDefaultOptimizerDimCap = 4096;

struct OptimizerConfig {
    std::size_t starts = 32;
    std::size_t max_iters = 500;
    double grad_tol = 1e-8;
    double step = 0.5; // initial step of every backtracking line search
    std::uint64_t seed = 0;
    double entropy_log_eps = 1e-12;
    std::size_t threads = 1;
    std::size_t dim_cap = kDefaultOptimizerDimCap; // on n^p for tensor powers

    // Throws InvalidInput on a nonsensical configuration.
    void validate() const;

    friend bool operator==(const OptimizerConfig&, const OptimizerConfig&) = default;
};

struct StartRecord {
    std::size_t index = 0;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;

    friend bool operator==(const StartRecord&, const StartRecord&) = default;
};

struct MinEntropyResult {
    double value = 0.0; // nats; an upper bound on the true minimum
    std::vector<Complex> argmin;
    RealSpectrum output_spectrum;
    std::vector<StartRecord> per_start;

    friend bool operator==(const MinEntropyResult&, const MinEntropyResult&) = default;
};

// H(tau(x x^*)). Throws InvalidInput unless | ||x|| - 1 | <= 1e-9.
double output_entropy(const QuantumChannel& tau, std::span<const Complex> x);

// Tangent gradient of x -> H(tau(x x^*)) on the realified sphere, stacked as
// (Re g_0 .. Re g_{n-1}, Im g_0 .. Im g_{n-1}).
std::vector<double> output_entropy_gradient(const QuantumChannel& tau, std::span<const Complex> x,
                                            double log_eps = 1e-12);

// Objective on unit vectors: returns f(x) and writes its Euclidean (complex) gradient.
using SphereObjective = std::function<double(std::span<const Complex> x, std::vector<Complex>& grad)>;

struct DescentRun {
    std::vector<Complex> x;
    double value = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> history; // objective after every accepted step, starting at x0
};

// Projected gradient descent with backtracking halving and normalization retraction.
// Accepted steps never increase the objective.
DescentRun descend_on_sphere(const SphereObjective& f, std::span<const Complex> x0,
                             const OptimizerConfig& cfg);

MinEntropyResult min_entropy(const QuantumChannel& tau, const OptimizerConfig& cfg);

// Minimum over tau^{(x)p}; the p-fold product of the single-copy minimizer is
// added as a warm start, so the result never exceeds p * H(tau) estimate.
MinEntropyResult min_entropy_tensor(const QuantumChannel& tau, std::size_t p,
                                    const OptimizerConfig& cfg);
MinEntropyResult min_entropy_tensor(const QuantumChannel& tau, std::size_t p,
                                    const OptimizerConfig& cfg, const MinEntropyResult& single);

// Best found max over unit x of the k largest eigenvalues of tau(x x^*); a lower bound.
double max_output_kyfan(const QuantumChannel& tau, std::size_t k, const OptimizerConfig& cfg);

struct SandwichRow {
    std::size_t p = 0;
    double hr_lower = 0.0;         // max(-log lambda_1, -log sigma_1)
    double f_bound = 0.0;          // F(A^{(x)p}) / p
    std::optional<double> bi_bound; // bi-quantum bound / p
    double lower = 0.0;            // max of the above
    double upper = 0.0;            // H(tau^{(x)p}) / p estimate
    double gap = 0.0;              // upper - lower
    bool consistent = false;       // lower <= upper + 1e-6

    friend bool operator==(const SandwichRow&, const SandwichRow&) = default;
};

// Lower bounds on H(tau^{(x)p}) / p against `upper_total` = an H(tau^{(x)p}) estimate.
SandwichRow sandwich_row(const QuantumChannel& tau, std::size_t p, double upper_total,
                         std::size_t eigen_cap);

std::vector<SandwichRow> regularized_sandwich(const QuantumChannel& tau, std::size_t p_max,
                                              const OptimizerConfig& cfg);

} // namespace qchan
