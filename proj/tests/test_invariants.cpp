#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace qchan;
using namespace qchan::test;

namespace {

// F evaluated straight from its definition, kept apart from the library's scan.
double oracle_f(std::vector<double> lam) {
    if (lam[0] >= 1.0) return 0.0;
    double prefix = 0.0, value = 0.0;
    for (double v : lam) {
        if (prefix + v >= 1.0 - 1e-12) {
            const double eta = std::min(std::max(1.0 - prefix, 0.0), v);
            return value - (eta > 0 ? eta * std::log(eta) : 0.0);
        }
        prefix += v;
        value -= v > 0 ? v * std::log(v) : 0.0;
    }
    return NAN;
}

} // namespace

TEST_CASE("closed forms for the column-Kraus example") {
    const QuantumChannel t = example1();
    CHECK(std::abs(lambda1_a(t) - 0.5) < 1e-12);
    const double s1 = channel_singular_values(t)[0];
    CHECK(std::abs(s1 - 1.0 / std::sqrt(2.0)) < 1e-12);
    // sigma_1 = sqrt(tr A^2)
    const HermitianMatrix a = a_matrix(t);
    CHECK(std::abs(s1 - std::sqrt(trace_product(a, a))) < 1e-12);
    CHECK(lambda1_a(t) < s1);
    CHECK(std::abs(hr_lower_bound(t) - kLog2) < 1e-12);

    const FBoundSequence seq = f_bound_tensor(t, 10, kDefaultEigenProductCap);
    REQUIRE(seq.per_p.size() == 10);
    CHECK_FALSE(seq.truncated);
    for (const auto& [p, v] : seq.per_p) CHECK(std::abs(v - kLog2) < 1e-9);
}

TEST_CASE("closed forms for the row-Kraus example") {
    for (std::size_t n : {2u, 3u, 4u}) {
        const QuantumChannel t = example2(n);
        CHECK(std::abs(lambda1_a(t) - double(n)) < 1e-12);
        const double s1 = channel_singular_values(t)[0];
        CHECK(std::abs(s1 - std::sqrt(double(n))) < 1e-12);
        CHECK(lambda1_a(t) > s1);
        CHECK(std::abs(hr_lower_bound(t) + 0.5 * std::log(double(n))) < 1e-12);
    }
}

TEST_CASE("depolarizing and identity spectra") {
    const auto s = channel_singular_values(depolarizing(2));
    REQUIRE(s.size() == 4);
    CHECK(s[0] == doctest::Approx(1.0));
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(s[i]) < 1e-14);
    CHECK(lambda1_a(QuantumChannel::identity(3)) == doctest::Approx(1.0));
    CHECK(std::abs(hr_lower_bound(QuantumChannel::identity(3))) < 1e-14);
    CHECK(channel_singular_values(example1()).size() == 1);
}

TEST_CASE("f_bound hand cases") {
    const FBound big = f_bound(std::vector<double>{1.2, 0.3});
    CHECK(big.m_prime == 1);
    CHECK(big.value == 0.0);

    const FBound two = f_bound(std::vector<double>{0.6, 0.4});
    CHECK(two.m_prime == 2);
    CHECK(std::abs(two.eta - 0.4) < 1e-15);
    CHECK(std::abs(two.value - 0.6730116670092565) < 1e-12);
    CHECK(std::abs(two.value - oracle_f({0.6, 0.4})) < 1e-15);

    const FBound four = f_bound(std::vector<double>{0.5, 0.3, 0.2, 0.1});
    CHECK(four.m_prime == 3);
    CHECK(std::abs(four.eta - 0.2) < 1e-12);
    CHECK(std::abs(four.value - 1.0296530140645737) < 1e-12);
    CHECK(four.lambda_prefix == std::vector<double>{0.5, 0.3});

    CHECK_THROWS_AS(f_bound(std::vector<double>{0.5, -0.1}), Error);
    CHECK_THROWS_AS(f_bound(std::vector<double>{0.3, 0.5}), Error);
    CHECK_THROWS_AS(f_bound(std::vector<double>{0.3, 0.2}), Error);
}

TEST_CASE("F dominates -log lambda_1 on random spectra") {
    Rng rng(51);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 2 + t % 6;
        // eigenvalues of A(tau) for a random channel, plus raw random PSD spectra with mass >= 1
        std::vector<double> lam;
        if (t % 2 == 0) {
            const auto s = eigenvalues(a_matrix(feasible_channel(1 + t % 4, m, 2, rng)));
            lam.assign(s.values().begin(), s.values().end());
        } else {
            for (std::size_t i = 0; i < m; ++i) lam.push_back(rng.exponential());
            double sum = 0.0;
            for (double v : lam) sum += v;
            const double mass = 1.0 + rng.uniform();
            for (double& v : lam) v *= mass / sum;
            lam = sorted_desc(lam);
        }
        for (double& v : lam) v = std::max(v, 0.0);
        const FBound f = f_bound(lam);
        CHECK(f.eta >= 0.0);
        CHECK(f.eta <= 1.0);
        if (lam[0] < 1.0) {
            CHECK(f.value >= -std::log(lam[0]) - 1e-12);
            CHECK(f.eta <= lam[f.m_prime - 1] + 1e-15);
            CHECK(std::abs(f.value - oracle_f(lam)) < 1e-10);
        } else {
            CHECK(f.value == 0.0);
        }
    }
}

TEST_CASE("f_bound_tensor products and truncation") {
    Rng rng(52);
    const QuantumChannel t = feasible_channel(2, 3, 2, rng);
    const auto lam = eigenvalues(a_matrix(t));
    const FBoundSequence seq = f_bound_tensor(t, 4, kDefaultEigenProductCap);
    REQUIRE(seq.per_p.size() == 4);
    CHECK(std::abs(seq.per_p[0].second - f_bound(lam).value) < 1e-15);
    // p = 2 from an explicit tensor product of A(tau)
    const auto lam2 = eigenvalues(kron(a_matrix(t), a_matrix(t)));
    CHECK(std::abs(seq.per_p[1].second - f_bound(lam2).value / 2.0) < 1e-9);
    for (std::size_t i = 0; i < seq.per_p.size(); ++i) {
        if (lam[0] < 1.0) CHECK(seq.per_p[i].second >= -std::log(lam[0]) - 1e-12);
        if (i > 0) CHECK(seq.running_max[i] >= seq.running_max[i - 1]);
    }
    const FBoundSequence cut = f_bound_tensor(t, 10, 100);
    CHECK(cut.truncated);
    CHECK(cut.per_p.size() == 4); // 3^4 = 81 <= 100 < 243

    const FBoundSequence one = f_bound_tensor(QuantumChannel::identity(2), 3, 1000);
    for (const auto& [p, v] : one.per_p) CHECK(v == 0.0);
}

TEST_CASE("additivity of both invariants") {
    Rng rng(53);
    for (int t = 0; t < 25; ++t) {
        const QuantumChannel a = feasible_channel(1 + t % 3, 1 + (t / 3) % 3, 1 + t % 2, rng);
        const QuantumChannel b = feasible_channel(1 + (t / 2) % 3, 1 + t % 3, 2, rng);
        const QuantumChannel ab = tensor(a, b);
        CHECK(std::abs(lambda1_a(ab) - lambda1_a(a) * lambda1_a(b)) < 1e-8);
        const double sab = channel_singular_values(ab)[0];
        CHECK(std::abs(sab - channel_singular_values(a)[0] * channel_singular_values(b)[0]) < 1e-7);
    }
}

TEST_CASE("floor bounds and bi-quantum norm") {
    Rng rng(54);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + t % 4, m = 1 + (t / 4) % 4;
        const QuantumChannel tau = feasible_channel(n, m, 1 + t % 3, rng);
        CHECK(lambda1_a(tau) >= double(n) / double(m) - 1e-9);
        CHECK(channel_singular_values(tau)[0] >= std::sqrt(double(n) / double(m)) - 1e-9);
        // power iteration agrees with the eigen solver
        CHECK(std::abs(power_lambda1(a_matrix(tau)) - lambda1_a(tau)) < 1e-7);
    }
    for (int t = 0; t < 10; ++t) {
        const QuantumChannel u = random_unitary_channel(2 + t % 3, 1 + t % 4, rng);
        CHECK(std::abs(channel_singular_values(u)[0] - 1.0) < 1e-7);
    }
}

TEST_CASE("output spectra obey the Ky-Fan, norm and majorization bounds") {
    Rng rng(55);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + t % 2, m = 2 + t % 3;
        const QuantumChannel tau = feasible_channel(n, m, 2 + t % 2, rng);
        const auto lam_a = eigenvalues(a_matrix(tau));
        const double s1 = channel_singular_values(tau)[0];
        const FBound f = f_bound(lam_a);
        std::vector<double> eta(f.lambda_prefix);
        eta.push_back(f.eta);
        for (int s = 0; s < 20; ++s) {
            const auto x = random_unit(n, rng);
            const HermitianMatrix out = apply_pure(tau, x);
            const auto lo = eigenvalues(out);
            CHECK(lo[0] <= s1 + 1e-9);
            for (std::size_t k = 1; k <= m; ++k) CHECK(ky_fan_sum(out, k) <= ky_fan_sum(a_matrix(tau), k) + 1e-9);
            if (lam_a[0] < 1.0) CHECK(majorizes(eta, lo.values()));
        }
    }
}

TEST_CASE("norm identity through the superoperator singular bases") {
    Rng rng(56);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 2 + t % 2, m = 1 + t % 3;
        const QuantumChannel tau = feasible_channel(n, m, 2, rng);
        const SuperoperatorMatrix s = superoperator(tau);
        const RealSvd d = svd(s.matrix);
        const HermitianMatrix x = random_hermitian(n, rng);
        const auto cx = vectorize(x, s.input_basis);
        double rhs = 0.0;
        for (std::size_t i = 0; i < d.values.size(); ++i) {
            double c = 0.0;
            for (std::size_t q = 0; q < n * n; ++q) c += d.right(q, i) * cx[q];
            rhs += d.values[i] * d.values[i] * c * c;
        }
        double lhs = 0.0;
        for (double v : eigenvalues(apply(tau, x)).values()) lhs += v * v;
        CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, lhs));
    }
}

TEST_CASE("bi-quantum entropy bound") {
    const QuantumChannel dep = depolarizing(2);
    CHECK(std::abs(bi_channel_entropy_bound(dep, 1) - 0.5 * kLog2) < 1e-12);
    CHECK(std::abs(bi_channel_entropy_bound(QuantumChannel::identity(2), 3)) < 1e-12);
    CHECK_THROWS_AS(bi_channel_entropy_bound(example2(), 1), Error);
    CHECK_THROWS_AS(bi_channel_entropy_bound(QuantumChannel::identity(1), 1), Error);

    Rng rng(57);
    for (int t = 0; t < 10; ++t) {
        const QuantumChannel u = random_unitary_channel(2 + t % 2, 3, rng);
        const double s2 = channel_singular_values(u)[1];
        double prev = 0.0;
        for (std::size_t p = 1; p <= 4; ++p) {
            const double b = bi_channel_entropy_bound(u, p);
            const double np = std::pow(double(u.input_dim()), double(p));
            CHECK(std::abs(b + 0.5 * std::log(s2 * s2 + (1 - s2 * s2) / np)) < 1e-12);
            CHECK(b >= prev - 1e-15);
            prev = b;
        }
        CHECK(prev > 0.0);
        // output purity bound used in the bi-quantum argument
        for (int s = 0; s < 10; ++s) {
            const auto x = random_unit(u.input_dim(), rng);
            double pur = 0.0;
            for (double v : eigenvalues(apply_pure(u, x)).values()) pur += v * v;
            CHECK(pur <= s2 * s2 + (1 - s2 * s2) / double(u.input_dim()) + 1e-8);
        }
    }
}

TEST_CASE("sigma_2 of a tensor product is the larger factor value") {
    Rng rng(58);
    for (int t = 0; t < 10; ++t) {
        const QuantumChannel a = random_unitary_channel(2, 2 + t % 2, rng);
        const QuantumChannel b = random_unitary_channel(2 + t % 2, 3, rng);
        const auto [direct, factors] = sigma2_tensor_check(a, b);
        CHECK(std::abs(direct - factors) < 1e-7);
    }
    const auto [dd, df] = sigma2_tensor_check(depolarizing(2), depolarizing(2));
    CHECK(std::abs(dd) < 1e-12);
    CHECK(std::abs(df) < 1e-12);
    const auto [id, idf] = sigma2_tensor_check(QuantumChannel::identity(2), QuantumChannel::identity(2));
    CHECK(id == doctest::Approx(1.0));
    CHECK(idf == doctest::Approx(1.0));
    CHECK_THROWS_AS(sigma2_tensor_check(example2(), depolarizing(2)), Error);
}

TEST_CASE("full report") {
    const InvariantReport r = full_report(example1(), 5, kDefaultEigenProductCap);
    CHECK(r.n == 1);
    CHECK(r.m == 2);
    CHECK(r.l == 2);
    CHECK(r.lambda1_A == doctest::Approx(0.5));
    CHECK(r.sigma[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(r.hr_lower == doctest::Approx(kLog2));
    CHECK(r.hr_nontrivial);
    CHECK(r.log_lambda1_A == doctest::Approx(-kLog2));
    CHECK_FALSE(r.bi_bound.has_value());
    for (double v : r.f_bound_per_p.running_max) CHECK(v == doctest::Approx(kLog2));

    const InvariantReport id = full_report(QuantumChannel::identity(2), 3, kDefaultEigenProductCap);
    CHECK(id.lambda1_A == doctest::Approx(1.0));
    CHECK(id.sigma[0] == doctest::Approx(1.0));
    CHECK(std::abs(id.hr_lower) < 1e-12);
    CHECK_FALSE(id.hr_nontrivial);
    CHECK(id.flags.is_bi_quantum);
    CHECK(id.flags.is_unitary_channel);
    REQUIRE(id.bi_bound.has_value());
    CHECK(std::abs(*id.bi_bound) < 1e-12);

    const InvariantReport e2 = full_report(example2(), 3, kDefaultEigenProductCap);
    CHECK(e2.lambda1_A > e2.sigma[0]);
    CHECK(e2.hr_lower < 0.0);
}
