#pragma once

// Quantum channels in Kraus form: tau(X) = sum_i A_i X A_i^* with
// sum_i A_i^* A_i = I_n.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qchan/linalg.hpp"
#include "qchan/matrix.hpp"

namespace qchan {

// Frobenius tolerance on sum_i A_i^* A_i - I_n.
inline constexpr double kChannelTolerance = 1e-9;

// Default ceiling on the input/output dimension of composite channels.
inline constexpr std::size_t kDefaultDimCap = 4096;

// Ceiling on the total number of stored Kraus entries (l * m * n) of a composite channel.
inline constexpr std::size_t kMaxKrausEntries = std::size_t{1} << 26;

class QuantumChannel {
public:
    // Validates shapes and trace preservation; throws NotAChannelError with the residual.
    explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

    std::size_t input_dim() const noexcept { return n_; }
    std::size_t output_dim() const noexcept { return m_; }
    std::size_t kraus_count() const noexcept { return kraus_.size(); }
    const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

    static QuantumChannel identity(std::size_t n);

    friend bool operator==(const QuantumChannel&, const QuantumChannel&) = default;

private:
    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<ComplexMatrix> kraus_;
};

QuantumChannel make_channel(std::vector<ComplexMatrix> kraus);

// ||sum_i A_i^* A_i - I_n||_F. Shapes must agree.
double trace_preservation_residual(std::span<const ComplexMatrix> kraus);

HermitianMatrix apply(const QuantumChannel& tau, const HermitianMatrix& x);
HermitianMatrix adjoint_apply(const QuantumChannel& tau, const HermitianMatrix& y);

// tau(x x^*) for a unit vector x of length n.
HermitianMatrix apply_pure(const QuantumChannel& tau, std::span<const Complex> x);

// A(tau) = sum_i A_i A_i^*, an m x m positive semidefinite matrix of trace n.
HermitianMatrix a_matrix(const QuantumChannel& tau);

// Matrix of tau as a real linear map on hermitian coordinates:
// entry (p, q) = tr(tau(U_q) V_p) for U = herm_basis(n), V = herm_basis(m).
struct SuperoperatorMatrix {
    RealMatrix matrix;
    HermBasis input_basis;
    HermBasis output_basis;
};

SuperoperatorMatrix superoperator(const QuantumChannel& tau);

// sum_i A_i (x) conj(A_i), acting on row-major vectorized n x n matrices:
// natural_rep * vec(X) = vec(tau(X)).
ComplexMatrix natural_rep(const QuantumChannel& tau);

// Kraus list {A_i (x) B_j}, i major. Throws CapExceeded if a dimension passes dim_cap.
QuantumChannel tensor(const QuantumChannel& t1, const QuantumChannel& t2,
                      std::size_t dim_cap = kDefaultDimCap);
QuantumChannel tensor_power(const QuantumChannel& tau, std::size_t p,
                            std::size_t dim_cap = kDefaultDimCap);

// Kraus list {A_i / sqrt(l2) (+) B_j / sqrt(l1)}: acts as tau1 (+) tau2 on
// block-diagonal inputs and A(tau1 (+) tau2) = A(tau1) (+) A(tau2).
QuantumChannel channel_direct_sum(const QuantumChannel& t1, const QuantumChannel& t2,
                                  std::size_t dim_cap = kDefaultDimCap);

// Kraus list {B_i C^{-1/2}} with C = sum_i B_i^* B_i. Throws CannotRenormalize when
// lambda_min(C) <= 1e-10.
QuantumChannel renormalize_kraus(std::span<const ComplexMatrix> b);

bool is_bi_quantum(const QuantumChannel& tau);
bool is_strongly_self_adjoint(const QuantumChannel& tau);

// A_i = t_i Q_i with t_i = ||A_i||_F / sqrt(n) and Q_i unitary.
struct UnitaryDecomposition {
    std::vector<double> weights;
    std::vector<ComplexMatrix> unitaries;
};

std::optional<UnitaryDecomposition> unitary_decomposition(const QuantumChannel& tau);
bool is_unitary_channel(const QuantumChannel& tau);

struct ChannelFlags {
    bool is_bi_quantum = false;
    bool is_unitary_channel = false;
    bool is_strongly_self_adjoint = false;

    friend bool operator==(const ChannelFlags&, const ChannelFlags&) = default;
};

ChannelFlags channel_flags(const QuantumChannel& tau);

} // namespace qchan
