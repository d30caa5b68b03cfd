#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace qchan;
using namespace qchan::test;

TEST_CASE("matrix construction rejects bad input") {
    CHECK_THROWS_AS(ComplexMatrix(2, 2, {1.0, 2.0, 3.0}), Error);
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {Complex(NAN, 0.0)}), Error);
    CHECK_THROWS_AS(HermitianMatrix(ComplexMatrix(2, 3)), Error);
}

TEST_CASE("eig_hermitian small cases") {
    CHECK(eigenvalues(HermitianMatrix::identity(2)).vector() == std::vector<double>{1.0, 1.0});

    const std::vector<double> d{-1.0, 3.0};
    const auto es = eig_hermitian(HermitianMatrix::diagonal(d));
    CHECK(es.values[0] == doctest::Approx(3.0));
    CHECK(es.values[1] == doctest::Approx(-1.0));
    CHECK(std::abs(std::abs(es.vectors(1, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(es.vectors(0, 1)) - 1.0) < 1e-12);

    const HermitianMatrix px(ComplexMatrix(2, 2, {0.0, 1.0, 1.0, 0.0}));
    const auto ev = eigenvalues(px);
    CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("eigen and svd reconstruction on random inputs up to n = 16") {
    Rng rng(21);
    for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 16u}) {
        const HermitianMatrix x = random_hermitian(n, rng);
        const auto es = eig_hermitian(x);
        for (std::size_t i = 1; i < n; ++i) CHECK(es.values[i] <= es.values[i - 1]);
        ComplexMatrix lam(n, n);
        for (std::size_t i = 0; i < n; ++i) lam(i, i) = es.values[i];
        const ComplexMatrix rec = es.vectors * lam * es.vectors.adjoint();
        CHECK((rec - x.matrix()).frobenius_norm() <= 1e-9 * std::max(1.0, x.frobenius_norm()));
        CHECK((adjoint_times(es.vectors, es.vectors) - ComplexMatrix::identity(n)).frobenius_norm() < 1e-9);

        // hermitian singular values are |eigenvalues|
        std::vector<double> absval;
        for (double v : es.values.values()) absval.push_back(std::abs(v));
        const auto sv = singular_values(x.matrix());
        const auto sorted = sorted_desc(absval);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sv[i] - sorted[i]) < 1e-9);

        const ComplexMatrix a = gaussian_matrix(n, n + 2, rng);
        const Svd s = svd(a);
        double f2 = 0.0;
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            f2 += s.values[i] * s.values[i];
            for (std::size_t r = 0; r < n; ++r) {
                Complex av = 0.0;
                for (std::size_t c = 0; c < n + 2; ++c) av += a(r, c) * s.right(c, i);
                CHECK(std::abs(av - s.values[i] * s.left(r, i)) < 1e-9);
            }
        }
        CHECK(std::abs(std::sqrt(f2) - a.frobenius_norm()) < 1e-9);
    }
}

TEST_CASE("svd small cases") {
    for (double v : singular_values(ComplexMatrix::identity(3)).values()) CHECK(v == doctest::Approx(1.0));
    const auto s = singular_values(ComplexMatrix(2, 2, {2.0, 0.0, 0.0, 0.0}));
    CHECK(s[0] == doctest::Approx(2.0));
    CHECK(std::abs(s[1]) < 1e-15);
}

TEST_CASE("kronecker singular values are all pairwise products") {
    Rng rng(22);
    for (int trial = 0; trial < 10; ++trial) {
        const ComplexMatrix a = gaussian_matrix(2, 3, rng), b = gaussian_matrix(3, 2, rng);
        const auto sa = singular_values(a), sb = singular_values(b);
        std::vector<double> products;
        for (double x : sa.values())
            for (double y : sb.values()) products.push_back(x * y);
        products = sorted_desc(products);
        const auto sk = singular_values(kron(a, b));
        REQUIRE(sk.size() == 6);
        // A (x) B is 6x6 with rank <= 4; the extra values are zero
        products.resize(6, 0.0);
        for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(sk[i] - products[i]) < 1e-8);
    }
}

TEST_CASE("kron and direct_sum structure") {
    CHECK(max_abs_diff(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), ComplexMatrix::identity(6)) == 0.0);
    CHECK(max_abs_diff(direct_sum(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), ComplexMatrix::identity(5)) == 0.0);

    Rng rng(23);
    const ComplexMatrix a = gaussian_matrix(2, 2, rng), b = gaussian_matrix(2, 2, rng);
    const ComplexMatrix k = kron(a, b);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(k(i, j) - a(i / 2, j / 2) * b(i % 2, j % 2)) < 1e-15);
    CHECK(numerical_rank(k) == numerical_rank(a) * numerical_rank(b));
    ComplexMatrix r1 = ComplexMatrix::column(std::vector<Complex>{1.0, 2.0});
    r1 = r1 * r1.adjoint();
    CHECK(numerical_rank(kron(r1, a)) == 2);

    const ComplexMatrix c = gaussian_matrix(3, 1, rng);
    const ComplexMatrix ds = direct_sum(a, c);
    CHECK(ds.rows() == 5);
    CHECK(ds.cols() == 3);
    CHECK(max_abs_diff(ds.adjoint(), direct_sum(a.adjoint(), c.adjoint())) == 0.0);
    std::vector<double> uni;
    for (double v : singular_values(a).values()) uni.push_back(v);
    for (double v : singular_values(c).values()) uni.push_back(v);
    uni = sorted_desc(uni);
    const auto sds = singular_values(ds);
    for (std::size_t i = 0; i < uni.size(); ++i) CHECK(std::abs(sds[i] - uni[i]) < 1e-12);
}

TEST_CASE("ky_fan_sum") {
    CHECK(ky_fan_sum(HermitianMatrix::identity(2), 2) == doctest::Approx(2.0));
    const std::vector<double> d{3.0, -1.0};
    CHECK(ky_fan_sum(HermitianMatrix::diagonal(d), 1) == doctest::Approx(3.0));
    CHECK_THROWS_AS(ky_fan_sum(HermitianMatrix::identity(2), 0), Error);
    CHECK_THROWS_AS(ky_fan_sum(HermitianMatrix::identity(2), 3), Error);

    // random orthonormal frames never beat the Ky-Fan sum
    Rng rng(24);
    const HermitianMatrix x = random_hermitian(4, rng);
    for (std::size_t k = 1; k <= 4; ++k) {
        const double kf = ky_fan_sum(x, k);
        double best = -INFINITY;
        for (int t = 0; t < 300; ++t) {
            const ComplexMatrix q = haar_unitary(4, rng);
            double s = 0.0;
            for (std::size_t j = 0; j < k; ++j)
                for (std::size_t a = 0; a < 4; ++a)
                    for (std::size_t b = 0; b < 4; ++b) s += (std::conj(q(a, j)) * x(a, b) * q(b, j)).real();
            best = std::max(best, s);
        }
        CHECK(best <= kf + 1e-9);
    }
}

TEST_CASE("entropies") {
    Rng rng(25);
    const auto x = random_unit(3, rng);
    CHECK(std::abs(von_neumann_entropy(HermitianMatrix::outer(x))) < 1e-12);
    CHECK(von_neumann_entropy(0.5 * HermitianMatrix::identity(2)) == doctest::Approx(kLog2).epsilon(1e-15));
    const std::vector<double> d{0.6, 0.4};
    CHECK(std::abs(von_neumann_entropy(HermitianMatrix::diagonal(d)) - 0.6730116670092565) < 1e-14);
    CHECK(std::abs(direct_shannon({0.6, 0.4}) - 0.6730116670092565) < 1e-15);
    CHECK(von_neumann_entropy(HermitianMatrix::diagonal(d), LogBase::Two) ==
          doctest::Approx(0.6730116670092565 / kLog2));

    const std::vector<double> p3{0.5, 0.3, 0.2};
    CHECK(std::abs(shannon_entropy(p3) - 1.0296530140645737) < 1e-14);
    CHECK(std::abs(direct_shannon(p3) - 1.0296530140645737) < 1e-15);
    CHECK(shannon_entropy(std::vector<double>{1.0, 0.0, 0.0}) == 0.0);
    CHECK(shannon_entropy(std::vector<double>(5, 0.2)) == doctest::Approx(std::log(5.0)));
    CHECK_THROWS_AS(shannon_entropy(std::vector<double>{0.5, -0.1}), Error);

    const std::vector<double> bad{1.0, -1e-6};
    CHECK_THROWS_AS(von_neumann_entropy(HermitianMatrix::diagonal(bad)), Error);
    const std::vector<double> tiny{1.0, -1e-12};
    CHECK(von_neumann_entropy(HermitianMatrix::diagonal(tiny)) == doctest::Approx(0.0));
}

TEST_CASE("entropy additivity under kron and concavity") {
    Rng rng(26);
    for (int t = 0; t < 20; ++t) {
        const HermitianMatrix a = random_density(2, rng), b = random_density(3, rng);
        CHECK(std::abs(von_neumann_entropy(kron(a, b)) - von_neumann_entropy(a) - von_neumann_entropy(b)) < 1e-9);
        const HermitianMatrix y = random_density(2, rng);
        for (double s : {0.25, 0.5, 0.75}) {
            const double mix = von_neumann_entropy(s * a + (1 - s) * y);
            CHECK(-mix <= -s * von_neumann_entropy(a) - (1 - s) * von_neumann_entropy(y) + 1e-9);
        }
    }
}

TEST_CASE("majorization") {
    CHECK(majorizes(std::vector<double>{1.0, 0.0}, std::vector<double>{0.5, 0.5}));
    CHECK_FALSE(majorizes(std::vector<double>{0.5, 0.5}, std::vector<double>{1.0, 0.0}));
    CHECK_FALSE(majorizes(std::vector<double>{1.0, 0.0}, std::vector<double>{0.5, 0.4}));
    CHECK(majorizes(std::vector<double>{1.0}, std::vector<double>{0.5, 0.25, 0.25}));

    Rng rng(27);
    for (int t = 0; t < 30; ++t) {
        const HermitianMatrix x = random_hermitian(4, rng), y = random_hermitian(4, rng);
        const double a = rng.uniform(), b = rng.uniform();
        const auto lx = eigenvalues(x), ly = eigenvalues(y);
        std::vector<double> rhs(4);
        for (std::size_t i = 0; i < 4; ++i) rhs[i] = a * lx[i] + b * ly[i];
        CHECK(majorizes(rhs, eigenvalues(a * x + b * y).values()));
    }
}

TEST_CASE("hermitian basis") {
    const HermBasis b1(1);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0](0, 0) == Complex(1.0, 0.0));
    CHECK_THROWS_AS(HermBasis(0), Error);

    Rng rng(28);
    for (std::size_t n : {2u, 3u, 4u}) {
        const HermBasis b(n);
        REQUIRE(b.size() == n * n);
        CHECK(max_abs_diff(b[0].matrix(), ComplexMatrix::identity(n) * Complex(1.0 / std::sqrt(double(n)), 0.0)) < 1e-15);
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
                // Gram entry by explicit summation
                Complex g = 0.0;
                for (std::size_t r = 0; r < n; ++r)
                    for (std::size_t c = 0; c < n; ++c) g += b[i](r, c) * b[j](c, r);
                CHECK(std::abs(g - Complex(i == j ? 1.0 : 0.0, 0.0)) < 1e-12);
            }
        const auto id = vectorize(HermitianMatrix::identity(n), b);
        CHECK(id[0] == doctest::Approx(std::sqrt(double(n))));
        for (std::size_t i = 1; i < id.size(); ++i) CHECK(std::abs(id[i]) < 1e-15);

        const HermitianMatrix x = random_hermitian(n, rng), y = random_hermitian(n, rng);
        const auto cx = vectorize(x, b), cy = vectorize(y, b);
        CHECK(max_abs_diff(devectorize(cx, b).matrix(), x.matrix()) < 1e-12);
        double nrm = 0.0, ip = 0.0;
        for (std::size_t i = 0; i < cx.size(); ++i) {
            nrm += cx[i] * cx[i];
            ip += cx[i] * cy[i];
        }
        CHECK(std::abs(std::sqrt(nrm) - x.frobenius_norm()) < 1e-12);
        CHECK(std::abs(ip - (x.matrix() * y.matrix()).trace().real()) < 1e-12);
    }
    CHECK_THROWS_AS(vectorize(HermitianMatrix::identity(2), HermBasis(3)), Error);
}
