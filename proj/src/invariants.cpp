#include "qchan/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qchan/kernels.hpp"

namespace qchan {

namespace {

// Prefix mass this close to one counts as reaching one.
constexpr double kMassTolerance = 1e-12;

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

std::vector<double> checked_spectrum(std::span<const double> lambda) {
    std::vector<double> v(lambda.begin(), lambda.end());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) fail(ErrorKind::InvalidInput, "f_bound: non-finite eigenvalue");
        if (v[i] < -kEntropyClampFloor)
            fail(ErrorKind::InvalidInput, "f_bound: negative eigenvalue " + std::to_string(v[i]));
        if (i > 0 && v[i] > v[i - 1] + kMassTolerance)
            fail(ErrorKind::InvalidInput, "f_bound: eigenvalues must be nonincreasing");
        v[i] = std::max(v[i], 0.0);
    }
    return v;
}

} // namespace

double lambda1_a(const QuantumChannel& tau) { return eigenvalues(a_matrix(tau)).front(); }

RealSpectrum channel_singular_values(const QuantumChannel& tau) {
    return singular_values(superoperator(tau).matrix);
}

double hr_lower_bound(const QuantumChannel& tau) {
    return std::max(-std::log(lambda1_a(tau)), -std::log(channel_singular_values(tau).front()));
}

FBound f_bound(std::span<const double> lambda) {
    if (lambda.empty()) fail(ErrorKind::InvalidInput, "f_bound: empty spectrum");
    const std::vector<double> v = checked_spectrum(lambda);
    FBound out;
    if (v.front() >= 1.0 - kMassTolerance) {
        out.m_prime = 1;
        out.eta = 1.0;
        out.value = 0.0;
        return out;
    }
    double prefix = 0.0;
    std::size_t m_prime = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (prefix + v[i] >= 1.0 - kMassTolerance) {
            m_prime = i + 1;
            break;
        }
        prefix += v[i];
    }
    if (m_prime == 0)
        fail(ErrorKind::InvalidInput, "f_bound: total mass " + std::to_string(prefix) +
                                          " is below one");
    out.m_prime = m_prime;
    out.lambda_prefix.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m_prime - 1));
    out.eta = std::clamp(1.0 - prefix, 0.0, v[m_prime - 1]);
    double value = -xlogx(out.eta);
    for (double x : out.lambda_prefix) value -= xlogx(x);
    out.value = value;
    return out;
}

FBound f_bound(const RealSpectrum& lambda) { return f_bound(lambda.values()); }

FBoundSequence f_bound_tensor(const RealSpectrum& lambda, std::size_t p_max, std::size_t dim_cap) {
    const std::vector<double> base = checked_spectrum(lambda.values());
    const auto& kt = kernels::active_kernels();
    FBoundSequence out;
    std::vector<double> current{1.0};
    std::vector<double> next;
    double best = -INFINITY;
    for (std::size_t p = 1; p <= p_max; ++p) {
        if (current.size() > dim_cap / base.size()) {
            out.truncated = true;
            break;
        }
        next.resize(current.size() * base.size());
        for (std::size_t j = 0; j < base.size(); ++j)
            kt.dscal_copy(current.size(), base[j], current.data(), next.data() + j * current.size());
        current.swap(next);
        std::vector<double> sorted(current);
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        const double per_p = f_bound(sorted).value / static_cast<double>(p);
        best = std::max(best, per_p);
        out.per_p.emplace_back(p, per_p);
        out.running_max.push_back(best);
    }
    return out;
}

FBoundSequence f_bound_tensor(const QuantumChannel& tau, std::size_t p_max, std::size_t dim_cap) {
    return f_bound_tensor(eigenvalues(a_matrix(tau)), p_max, dim_cap);
}

double bi_channel_entropy_bound(double sigma2, std::size_t n, std::size_t p) {
    const double s = std::clamp(sigma2, 0.0, 1.0);
    const double np = std::pow(static_cast<double>(n), static_cast<double>(p));
    return -0.5 * std::log(s * s + (1.0 - s * s) / np);
}

double bi_channel_entropy_bound(const QuantumChannel& tau, std::size_t p) {
    if (!is_bi_quantum(tau))
        fail(ErrorKind::Inapplicable, "bi_channel_entropy_bound: channel is not bi-quantum");
    if (tau.input_dim() < 2)
        fail(ErrorKind::Inapplicable, "bi_channel_entropy_bound: needs n >= 2");
    if (p == 0) fail(ErrorKind::InvalidInput, "bi_channel_entropy_bound: p must be at least 1");
    return bi_channel_entropy_bound(channel_singular_values(tau)[1], tau.input_dim(), p);
}

std::pair<double, double> sigma2_tensor_check(const QuantumChannel& t1, const QuantumChannel& t2) {
    if (!is_bi_quantum(t1) || !is_bi_quantum(t2))
        fail(ErrorKind::Inapplicable, "sigma2_tensor_check: both channels must be bi-quantum");
    auto sigma2 = [](const RealSpectrum& s) { return s.size() > 1 ? s[1] : 0.0; };
    const double direct = sigma2(channel_singular_values(tensor(t1, t2)));
    const double factors = std::max(sigma2(channel_singular_values(t1)),
                                    sigma2(channel_singular_values(t2)));
    return {direct, factors};
}

InvariantReport full_report(const QuantumChannel& tau, std::size_t p_max, std::size_t dim_cap) {
    InvariantReport r;
    r.n = tau.input_dim();
    r.m = tau.output_dim();
    r.l = tau.kraus_count();
    const RealSpectrum a_spec = eigenvalues(a_matrix(tau));
    r.lambda1_A = a_spec.front();
    r.sigma = channel_singular_values(tau);
    r.log_lambda1_A = std::log(r.lambda1_A);
    r.log_sigma1 = std::log(r.sigma.front());
    r.hr_lower = std::max(-r.log_lambda1_A, -r.log_sigma1);
    r.hr_nontrivial = std::min(r.lambda1_A, r.sigma.front()) < 1.0 - kChannelTolerance;
    r.f_bound = f_bound(a_spec);
    r.f_bound_per_p = f_bound_tensor(a_spec, p_max, dim_cap);
    r.flags = channel_flags(tau);
    if (r.flags.is_bi_quantum && r.n >= 2)
        r.bi_bound = bi_channel_entropy_bound(r.sigma[1], r.n, 1);
    return r;
}

} // namespace qchan
