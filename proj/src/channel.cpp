#include "qchan/channel.hpp"

#include <cmath>
#include <string>

namespace qchan {

namespace {

std::string shape(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// a^p with an overflow-safe cap check.
bool power_within(std::size_t base, std::size_t p, std::size_t cap) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < p; ++i) {
        if (base != 0 && v > cap / base) return false;
        v *= base;
    }
    return v <= cap;
}

void check_composite(std::size_t n, std::size_t m, std::size_t l, std::size_t dim_cap,
                     const char* op) {
    if (n > dim_cap || m > dim_cap)
        fail(ErrorKind::CapExceeded, std::string(op) + ": dimensions " + std::to_string(n) + " -> " +
                                         std::to_string(m) + " exceed cap " +
                                         std::to_string(dim_cap));
    if (l > kMaxKrausEntries / (n * m))
        fail(ErrorKind::CapExceeded, std::string(op) + ": " + std::to_string(l) +
                                         " Kraus operators of size " + std::to_string(m) + "x" +
                                         std::to_string(n) + " exceed the storage cap");
}

} // namespace

double trace_preservation_residual(std::span<const ComplexMatrix> kraus) {
    if (kraus.empty()) fail(ErrorKind::InvalidInput, "empty Kraus list");
    ComplexMatrix acc = ComplexMatrix::identity(kraus.front().cols()) * Complex(-1.0, 0.0);
    for (const auto& a : kraus) acc += adjoint_times(a, a);
    return acc.frobenius_norm();
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) fail(ErrorKind::InvalidInput, "a channel needs at least one Kraus operator");
    m_ = kraus_.front().rows();
    n_ = kraus_.front().cols();
    if (m_ == 0 || n_ == 0) fail(ErrorKind::InvalidInput, "Kraus operators must be non-empty");
    for (std::size_t i = 0; i < kraus_.size(); ++i) {
        if (kraus_[i].rows() != m_ || kraus_[i].cols() != n_)
            fail(ErrorKind::DimensionMismatch, "Kraus operator " + std::to_string(i) + " is " +
                                                   shape(kraus_[i]) + ", expected " +
                                                   shape(kraus_.front()));
        if (!kraus_[i].all_finite())
            fail(ErrorKind::InvalidInput, "Kraus operator " + std::to_string(i) +
                                              " has non-finite entries");
    }
    const double residual = trace_preservation_residual(kraus_);
    if (!(residual <= kChannelTolerance))
        throw NotAChannelError(residual, "not trace preserving: ||sum A_i^* A_i - I||_F = " +
                                             std::to_string(residual));
}

QuantumChannel QuantumChannel::identity(std::size_t n) {
    return QuantumChannel({ComplexMatrix::identity(n)});
}

QuantumChannel make_channel(std::vector<ComplexMatrix> kraus) {
    return QuantumChannel(std::move(kraus));
}

HermitianMatrix apply(const QuantumChannel& tau, const HermitianMatrix& x) {
    if (x.dim() != tau.input_dim())
        fail(ErrorKind::DimensionMismatch, "apply: input is " + std::to_string(x.dim()) +
                                               "-dimensional, channel expects " +
                                               std::to_string(tau.input_dim()));
    ComplexMatrix out(tau.output_dim(), tau.output_dim());
    for (const auto& a : tau.kraus()) out += (a * x.matrix()) * a.adjoint();
    return HermitianMatrix(out);
}

HermitianMatrix adjoint_apply(const QuantumChannel& tau, const HermitianMatrix& y) {
    if (y.dim() != tau.output_dim())
        fail(ErrorKind::DimensionMismatch, "adjoint_apply: input is " + std::to_string(y.dim()) +
                                               "-dimensional, channel output is " +
                                               std::to_string(tau.output_dim()));
    ComplexMatrix out(tau.input_dim(), tau.input_dim());
    for (const auto& a : tau.kraus()) out += adjoint_times(a, y.matrix() * a);
    return HermitianMatrix(out);
}

HermitianMatrix apply_pure(const QuantumChannel& tau, std::span<const Complex> x) {
    if (x.size() != tau.input_dim())
        fail(ErrorKind::DimensionMismatch, "apply_pure: vector length " + std::to_string(x.size()) +
                                               ", channel expects " +
                                               std::to_string(tau.input_dim()));
    // sum_i (A_i x)(A_i x)^*
    const ComplexMatrix col = ComplexMatrix::column(x);
    const std::size_t m = tau.output_dim();
    ComplexMatrix out(m, m);
    for (const auto& a : tau.kraus()) {
        const ComplexMatrix y = a * col;
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c) out(r, c) += y(r, 0) * std::conj(y(c, 0));
    }
    return HermitianMatrix(out);
}

HermitianMatrix a_matrix(const QuantumChannel& tau) {
    ComplexMatrix out(tau.output_dim(), tau.output_dim());
    for (const auto& a : tau.kraus()) out += a * a.adjoint();
    return HermitianMatrix(out);
}

SuperoperatorMatrix superoperator(const QuantumChannel& tau) {
    HermBasis in(tau.input_dim());
    HermBasis out(tau.output_dim());
    RealMatrix m(out.size(), in.size());
    for (std::size_t q = 0; q < in.size(); ++q) {
        const auto coords = vectorize(apply(tau, in[q]), out);
        for (std::size_t p = 0; p < out.size(); ++p) m(p, q) = coords[p];
    }
    return {std::move(m), std::move(in), std::move(out)};
}

ComplexMatrix natural_rep(const QuantumChannel& tau) {
    const std::size_t n = tau.input_dim(), m = tau.output_dim();
    ComplexMatrix out(m * m, n * n);
    for (const auto& a : tau.kraus()) out += kron(a, a.conj());
    return out;
}

QuantumChannel tensor(const QuantumChannel& t1, const QuantumChannel& t2, std::size_t dim_cap) {
    const std::size_t n = t1.input_dim() * t2.input_dim();
    const std::size_t m = t1.output_dim() * t2.output_dim();
    check_composite(n, m, t1.kraus_count() * t2.kraus_count(), dim_cap, "tensor");
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(t1.kraus_count() * t2.kraus_count());
    for (const auto& a : t1.kraus())
        for (const auto& b : t2.kraus()) kraus.push_back(kron(a, b));
    return QuantumChannel(std::move(kraus));
}

QuantumChannel tensor_power(const QuantumChannel& tau, std::size_t p, std::size_t dim_cap) {
    if (p == 0) fail(ErrorKind::InvalidInput, "tensor_power: p must be at least 1");
    if (!power_within(tau.input_dim(), p, dim_cap) || !power_within(tau.output_dim(), p, dim_cap))
        fail(ErrorKind::CapExceeded, "tensor_power: dimension " + std::to_string(tau.input_dim()) +
                                         "^" + std::to_string(p) + " or " +
                                         std::to_string(tau.output_dim()) + "^" + std::to_string(p) +
                                         " exceeds cap " + std::to_string(dim_cap));
    QuantumChannel acc = tau;
    for (std::size_t i = 1; i < p; ++i) acc = tensor(acc, tau, dim_cap);
    return acc;
}

QuantumChannel channel_direct_sum(const QuantumChannel& t1, const QuantumChannel& t2,
                                  std::size_t dim_cap) {
    const std::size_t n = t1.input_dim() + t2.input_dim();
    const std::size_t m = t1.output_dim() + t2.output_dim();
    const std::size_t l1 = t1.kraus_count(), l2 = t2.kraus_count();
    check_composite(n, m, l1 * l2, dim_cap, "channel_direct_sum");
    const Complex s1(1.0 / std::sqrt(static_cast<double>(l2)), 0.0);
    const Complex s2(1.0 / std::sqrt(static_cast<double>(l1)), 0.0);
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(l1 * l2);
    for (const auto& a : t1.kraus())
        for (const auto& b : t2.kraus()) kraus.push_back(direct_sum(a * s1, b * s2));
    return QuantumChannel(std::move(kraus));
}

QuantumChannel renormalize_kraus(std::span<const ComplexMatrix> b) {
    if (b.empty()) fail(ErrorKind::InvalidInput, "renormalize_kraus: empty list");
    const std::size_t n = b.front().cols();
    ComplexMatrix c(n, n);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].rows() != b.front().rows() || b[i].cols() != n)
            fail(ErrorKind::DimensionMismatch, "renormalize_kraus: operator " + std::to_string(i) +
                                                   " is " + shape(b[i]));
        c += adjoint_times(b[i], b[i]);
    }
    const auto es = eig_hermitian(HermitianMatrix(c));
    if (!(es.values.back() > kEntropyClampFloor))
        fail(ErrorKind::CannotRenormalize, "renormalize_kraus: lambda_min(C) = " +
                                               std::to_string(es.values.back()));
    const ComplexMatrix inv_sqrt =
        spectral_map(es, [](double v) { return 1.0 / std::sqrt(v); }).matrix();
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(b.size());
    for (const auto& bi : b) kraus.push_back(bi * inv_sqrt);
    return QuantumChannel(std::move(kraus));
}

bool is_bi_quantum(const QuantumChannel& tau) {
    if (tau.input_dim() != tau.output_dim()) return false;
    const ComplexMatrix diff = a_matrix(tau).matrix() - ComplexMatrix::identity(tau.input_dim());
    return diff.frobenius_norm() <= kChannelTolerance;
}

namespace {

bool assign_adjoints(const std::vector<std::vector<bool>>& ok, std::vector<bool>& used,
                     std::size_t i) {
    if (i == ok.size()) return true;
    for (std::size_t j = 0; j < ok.size(); ++j) {
        if (used[j] || !ok[i][j]) continue;
        used[j] = true;
        if (assign_adjoints(ok, used, i + 1)) return true;
        used[j] = false;
    }
    return false;
}

} // namespace

bool is_strongly_self_adjoint(const QuantumChannel& tau) {
    if (tau.input_dim() != tau.output_dim()) return false;
    const auto& k = tau.kraus();
    const std::size_t l = k.size();
    // ok[i][j]: A_i^* matches A_j
    std::vector<std::vector<bool>> ok(l, std::vector<bool>(l));
    for (std::size_t i = 0; i < l; ++i) {
        const ComplexMatrix adj = k[i].adjoint();
        for (std::size_t j = 0; j < l; ++j)
            ok[i][j] = (adj - k[j]).frobenius_norm() <= kChannelTolerance;
    }
    std::vector<bool> used(l, false);
    if (l <= 8) return assign_adjoints(ok, used, 0);
    for (std::size_t i = 0; i < l; ++i) {
        bool matched = false;
        for (std::size_t j = 0; j < l && !matched; ++j)
            if (!used[j] && ok[i][j]) used[j] = matched = true;
        if (!matched) return false;
    }
    return true;
}

std::optional<UnitaryDecomposition> unitary_decomposition(const QuantumChannel& tau) {
    if (tau.input_dim() != tau.output_dim()) return std::nullopt;
    const std::size_t n = tau.input_dim();
    const ComplexMatrix id = ComplexMatrix::identity(n);
    UnitaryDecomposition out;
    for (const auto& a : tau.kraus()) {
        const double t = a.frobenius_norm() / std::sqrt(static_cast<double>(n));
        if (t == 0.0) {
            out.weights.push_back(0.0);
            out.unitaries.push_back(id);
            continue;
        }
        ComplexMatrix q = a * Complex(1.0 / t, 0.0);
        if ((adjoint_times(q, q) - id).frobenius_norm() > kChannelTolerance ||
            ((q * q.adjoint()) - id).frobenius_norm() > kChannelTolerance)
            return std::nullopt;
        out.weights.push_back(t);
        out.unitaries.push_back(std::move(q));
    }
    return out;
}

bool is_unitary_channel(const QuantumChannel& tau) { return unitary_decomposition(tau).has_value(); }

ChannelFlags channel_flags(const QuantumChannel& tau) {
    ChannelFlags f;
    f.is_bi_quantum = is_bi_quantum(tau);
    f.is_unitary_channel = is_unitary_channel(tau);
    f.is_strongly_self_adjoint = is_strongly_self_adjoint(tau);
    return f;
}

} // namespace qchan
