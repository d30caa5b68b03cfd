#include "qchan/entropy_opt.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "qchan/invariants.hpp"
#include "qchan/kernels.hpp"
#include "qchan/random.hpp"

namespace qchan {

namespace {

// Armijo sufficient-decrease constant and the smallest step tried.
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-16;
constexpr double kUnitTolerance = 1e-9;

double norm(std::span<const Complex> x) {
    return std::sqrt(kernels::active_kernels().cnorm2(x.size(), x.data()));
}

void normalize(std::vector<Complex>& x) {
    const double s = norm(x);
    if (!(s > 0.0)) fail(ErrorKind::NumericalFailure, "cannot normalize a zero vector");
    for (auto& z : x) z /= s;
}

void require_unit(std::span<const Complex> x, std::size_t n) {
    if (x.size() != n)
        fail(ErrorKind::DimensionMismatch, "input vector has length " + std::to_string(x.size()) +
                                               ", channel expects " + std::to_string(n));
    const double s = norm(x);
    if (!(std::abs(s - 1.0) <= kUnitTolerance))
        fail(ErrorKind::InvalidInput, "input vector is not a unit vector (norm " +
                                          std::to_string(s) + ")");
}

// Removes the radial component: g - Re(x^* g) x.
void project_tangent(std::span<const Complex> x, std::vector<Complex>& g) {
    const double radial = kernels::active_kernels().cdotc(x.size(), x.data(), g.data()).real();
    kernels::active_kernels().caxpy(x.size(), Complex(-radial, 0.0), x.data(), g.data());
}

double entropy_of(const RealSpectrum& spectrum) {
    double h = 0.0;
    for (double v : spectrum.values())
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

// H(tau(x x^*)) and its Euclidean gradient -2 sum_i A_i^* (log_eps rho + I) A_i x.
double entropy_and_gradient(const QuantumChannel& tau, std::span<const Complex> x, double log_eps,
                            std::vector<Complex>* grad) {
    const ComplexMatrix col = ComplexMatrix::column(x);
    std::vector<ComplexMatrix> images;
    images.reserve(tau.kraus_count());
    const std::size_t m = tau.output_dim();
    ComplexMatrix rho(m, m);
    for (const auto& a : tau.kraus()) {
        images.push_back(a * col);
        const auto& y = images.back();
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) rho(r, c) += y(r, 0) * std::conj(y(c, 0));
    }
    const Eigensystem es = eig_hermitian(HermitianMatrix(rho));
    const double value = entropy_of(es.values);
    if (grad != nullptr) {
        const ComplexMatrix log_term =
            spectral_map(es, [log_eps](double v) { return v >= log_eps ? std::log(v) + 1.0 : 1.0; })
                .matrix();
        ComplexMatrix acc(tau.input_dim(), 1);
        for (std::size_t i = 0; i < tau.kraus_count(); ++i)
            acc += adjoint_times(tau.kraus()[i], log_term * images[i]);
        grad->assign(acc.entries().begin(), acc.entries().end());
        for (auto& z : *grad) z *= -2.0;
    }
    return value;
}

std::vector<Complex> random_unit_vector(std::size_t n, Rng rng) {
    std::vector<Complex> x(n);
    for (auto& z : x) z = rng.complex_normal();
    normalize(x);
    return x;
}

std::vector<Complex> kron_vectors(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (const Complex& u : a)
        for (const Complex& v : b) out.push_back(u * v);
    return out;
}

// Runs `job(i)` for i in [0, count) over cfg.threads workers; each i is handled once.
template <typename Job>
void for_each_start(std::size_t count, std::size_t threads, const Job& job) {
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) job(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < count; i += workers) job(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

MinEntropyResult run_min_entropy(const QuantumChannel& tau, const OptimizerConfig& cfg,
                                 const std::vector<std::vector<Complex>>& warm_starts) {
    cfg.validate();
    const double eps = cfg.entropy_log_eps;
    SphereObjective objective = [&tau, eps](std::span<const Complex> x, std::vector<Complex>& g) {
        return entropy_and_gradient(tau, x, eps, &g);
    };
    const Rng root(cfg.seed);
    const std::size_t total = cfg.starts + warm_starts.size();
    std::vector<DescentRun> runs(total);
    for_each_start(total, cfg.threads, [&](std::size_t i) {
        const std::vector<Complex> x0 = i < cfg.starts
                                            ? random_unit_vector(tau.input_dim(), root.child("start", i))
                                            : warm_starts[i - cfg.starts];
        runs[i] = descend_on_sphere(objective, x0, cfg);
    });

    MinEntropyResult out;
    std::size_t best = 0;
    for (std::size_t i = 0; i < total; ++i) {
        out.per_start.push_back({i, runs[i].value, runs[i].iterations, runs[i].converged});
        if (runs[i].value < runs[best].value) best = i;
    }
    out.value = runs[best].value;
    out.argmin = runs[best].x;
    out.output_spectrum = eigenvalues(apply_pure(tau, out.argmin));
    return out;
}

} // namespace

void OptimizerConfig::validate() const {
    if (starts < 1) fail(ErrorKind::InvalidInput, "optimizer: starts must be at least 1");
    if (max_iters < 1) fail(ErrorKind::InvalidInput, "optimizer: max_iters must be at least 1");
    if (!(grad_tol > 0.0) || !(step > 0.0) || !(entropy_log_eps > 0.0))
        fail(ErrorKind::InvalidInput, "optimizer: tolerances and step must be positive");
    if (threads < 1) fail(ErrorKind::InvalidInput, "optimizer: threads must be at least 1");
}

double output_entropy(const QuantumChannel& tau, std::span<const Complex> x) {
    require_unit(x, tau.input_dim());
    return entropy_and_gradient(tau, x, 1e-12, nullptr);
}

std::vector<double> output_entropy_gradient(const QuantumChannel& tau, std::span<const Complex> x,
                                            double log_eps) {
    require_unit(x, tau.input_dim());
    std::vector<Complex> g;
    entropy_and_gradient(tau, x, log_eps, &g);
    project_tangent(x, g);
    const std::size_t n = g.size();
    std::vector<double> out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = g[i].real();
        out[n + i] = g[i].imag();
    }
    return out;
}

DescentRun descend_on_sphere(const SphereObjective& f, std::span<const Complex> x0,
                             const OptimizerConfig& cfg) {
    DescentRun run;
    run.x.assign(x0.begin(), x0.end());
    normalize(run.x);
    std::vector<Complex> grad, trial_grad;
    run.value = f(run.x, grad);
    project_tangent(run.x, grad);
    run.history.push_back(run.value);

    const auto& kt = kernels::active_kernels();
    std::vector<Complex> trial(run.x.size());
    while (run.iterations < cfg.max_iters) {
        const double gnorm = norm(grad);
        if (gnorm <= cfg.grad_tol) {
            run.converged = true;
            break;
        }
        bool accepted = false;
        for (double s = cfg.step; s >= kMinStep; s *= 0.5) {
            trial = run.x;
            kt.caxpy(trial.size(), Complex(-s, 0.0), grad.data(), trial.data());
            normalize(trial);
            const double value = f(trial, trial_grad);
            // Strict decrease: near the minimum the Armijo term drops below one ulp of the value.
            if (value < run.value && value <= run.value - kArmijo * s * gnorm * gnorm) {
                run.x.swap(trial);
                run.value = value;
                grad.swap(trial_grad);
                project_tangent(run.x, grad);
                accepted = true;
                break;
            }
        }
        ++run.iterations;
        if (!accepted) break; // no descent left at working precision
        run.history.push_back(run.value);
    }
    return run;
}

MinEntropyResult min_entropy(const QuantumChannel& tau, const OptimizerConfig& cfg) {
    if (tau.input_dim() > cfg.dim_cap)
        fail(ErrorKind::CapExceeded, "min_entropy: input dimension " +
                                         std::to_string(tau.input_dim()) + " exceeds cap " +
                                         std::to_string(cfg.dim_cap));
    return run_min_entropy(tau, cfg, {});
}

MinEntropyResult min_entropy_tensor(const QuantumChannel& tau, std::size_t p,
                                    const OptimizerConfig& cfg, const MinEntropyResult& single) {
    if (p == 0) fail(ErrorKind::InvalidInput, "min_entropy_tensor: p must be at least 1");
    if (p == 1) return single;
    const QuantumChannel power = tensor_power(tau, p, cfg.dim_cap);
    std::vector<Complex> product = single.argmin;
    for (std::size_t i = 1; i < p; ++i) product = kron_vectors(product, single.argmin);
    normalize(product);
    return run_min_entropy(power, cfg, {product});
}

MinEntropyResult min_entropy_tensor(const QuantumChannel& tau, std::size_t p,
                                    const OptimizerConfig& cfg) {
    if (p == 0) fail(ErrorKind::InvalidInput, "min_entropy_tensor: p must be at least 1");
    // Fail on the cap before spending time on the single-copy run.
    std::size_t dim = 1;
    for (std::size_t i = 0; i < p; ++i) {
        if (dim > cfg.dim_cap / tau.input_dim())
            fail(ErrorKind::CapExceeded, "min_entropy_tensor: n^p exceeds cap " +
                                             std::to_string(cfg.dim_cap));
        dim *= tau.input_dim();
    }
    return min_entropy_tensor(tau, p, cfg, min_entropy(tau, cfg));
}

double max_output_kyfan(const QuantumChannel& tau, std::size_t k, const OptimizerConfig& cfg) {
    cfg.validate();
    const std::size_t m = tau.output_dim();
    if (k < 1 || k > m)
        fail(ErrorKind::InvalidInput, "max_output_kyfan: k = " + std::to_string(k) +
                                          " outside [1, " + std::to_string(m) + "]");
    // Minimize the negated Ky-Fan sum; its gradient is -2 tau^*(P_k) x with P_k
    // the projector onto the top-k eigenvectors of tau(x x^*).
    SphereObjective objective = [&tau, k](std::span<const Complex> x, std::vector<Complex>& g) {
        const Eigensystem es = eig_hermitian(apply_pure(tau, x));
        double sum = 0.0;
        for (std::size_t j = 0; j < k; ++j) sum += es.values[j];
        ComplexMatrix top(es.vectors.rows(), k);
        for (std::size_t r = 0; r < top.rows(); ++r)
            for (std::size_t c = 0; c < k; ++c) top(r, c) = es.vectors(r, c);
        const HermitianMatrix projector(top * top.adjoint());
        const ComplexMatrix pulled = adjoint_apply(tau, projector).matrix() * ComplexMatrix::column(x);
        g.assign(pulled.entries().begin(), pulled.entries().end());
        for (auto& z : g) z *= -2.0;
        return -sum;
    };
    const Rng root(cfg.seed);
    std::vector<double> best(cfg.starts);
    for_each_start(cfg.starts, cfg.threads, [&](std::size_t i) {
        const auto x0 = random_unit_vector(tau.input_dim(), root.child("kyfan", i));
        best[i] = -descend_on_sphere(objective, x0, cfg).value;
    });
    return *std::max_element(best.begin(), best.end());
}

SandwichRow sandwich_row(const QuantumChannel& tau, std::size_t p, double upper_total,
                         std::size_t eigen_cap) {
    if (p == 0) fail(ErrorKind::InvalidInput, "sandwich_row: p must be at least 1");
    const double pd = static_cast<double>(p);
    SandwichRow row;
    row.p = p;
    row.hr_lower = hr_lower_bound(tau);
    const FBoundSequence fseq = f_bound_tensor(tau, p, eigen_cap);
    // A truncated sequence leaves F at its trivial value 0.
    row.f_bound = fseq.per_p.size() == p ? fseq.per_p.back().second : 0.0;
    row.lower = std::max(row.hr_lower, row.f_bound);
    if (is_bi_quantum(tau) && tau.input_dim() >= 2) {
        row.bi_bound = bi_channel_entropy_bound(tau, p) / pd;
        row.lower = std::max(row.lower, *row.bi_bound);
    }
    row.upper = upper_total / pd;
    row.gap = row.upper - row.lower;
    row.consistent = row.lower <= row.upper + 1e-6;
    return row;
}

std::vector<SandwichRow> regularized_sandwich(const QuantumChannel& tau, std::size_t p_max,
                                              const OptimizerConfig& cfg) {
    if (p_max == 0) fail(ErrorKind::InvalidInput, "regularized_sandwich: p_max must be at least 1");
    const MinEntropyResult single = min_entropy(tau, cfg);
    std::vector<SandwichRow> rows;
    for (std::size_t p = 1; p <= p_max; ++p)
        rows.push_back(sandwich_row(tau, p, min_entropy_tensor(tau, p, cfg, single).value,
                                    kDefaultEigenProductCap));
    return rows;
}

} // namespace qchan
