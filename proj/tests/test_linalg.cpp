#include "doctest.h"
#include "kerrdiff/linalg.hpp"
#include "support/oracles.hpp"

using namespace kerrdiff::linalg;
using testsupport::random_cplx;

TEST_SUITE_BEGIN("linalg");

TEST_CASE("dense complex LU solves a known system") {
    // [[2, i], [1, 1]] x = [2+i, 2]  ->  x = [1, 1]... solve directly
    std::vector<Cplx> a = {{2, 0}, {0, 1}, {1, 0}, {1, 0}};
    DenseLU lu(a, 2);
    const auto x = lu.solve({{2, 1}, {2, 0}});
    CHECK(std::abs(x[0] - Cplx(1, 0)) < 1e-14);
    CHECK(std::abs(x[1] - Cplx(1, 0)) < 1e-14);
}

TEST_CASE("dense LU reproduces random right-hand sides") {
    const int n = 40;
    std::vector<Cplx> a(static_cast<std::size_t>(n) * n);
    for (auto& v : a) v = random_cplx();
    // strict diagonal dominance keeps the system well-conditioned, so the
    // solution error stays near roundoff
    for (int i = 0; i < n; ++i) a[i * n + i] += 2.0 * n;
    std::vector<Cplx> x_true(static_cast<std::size_t>(n));
    for (auto& v : x_true) v = random_cplx();
    std::vector<Cplx> b(static_cast<std::size_t>(n), Cplx(0, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) b[i] += a[i * n + j] * x_true[j];
    DenseLU lu(a, n);
    const auto x = lu.solve(b);
    for (int i = 0; i < n; ++i) CHECK(std::abs(x[i] - x_true[i]) < 1e-11);
    CHECK(lu.condition_estimate() < 1e4);
}

TEST_CASE("dense LU flags exact singularity") {
    std::vector<Cplx> a = {{1, 0}, {2, 0}, {2, 0}, {4, 0}};
    CHECK_THROWS_AS(DenseLU(a, 2), std::runtime_error);
}

TEST_CASE("banded LU agrees with the dense factorization") {
    const int n = 60, kl = 5, ku = 5;
    std::uniform_real_distribution<double> ur(-1.0, 1.0);
    std::vector<Cplx> dense(static_cast<std::size_t>(n) * n, Cplx(0, 0));
    BandedLU band(n, kl, ku);
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
            double v = ur(testsupport::rng());
            if (i == j) v += 12.0;  // dominant diagonal
            band.at(i, j) = v;
            dense[static_cast<std::size_t>(i) * n + j] = v;
        }
    }
    std::vector<double> b(static_cast<std::size_t>(n));
    for (auto& v : b) v = ur(testsupport::rng());

    band.factor();
    const auto xb = band.solve(b);

    std::vector<Cplx> bc(b.begin(), b.end());
    DenseLU lu(dense, n);
    const auto xd = lu.solve(bc);
    for (int i = 0; i < n; ++i)
        CHECK(std::abs(xb[i] - xd[i].real()) < 1e-11);
}

TEST_CASE("banded LU needs pivoting to survive a zero diagonal") {
    // leading diagonal entry zero; partial pivoting must swap rows
    BandedLU band(4, 2, 2);
    const double m[4][4] = {{0, 1, 2, 0},
                            {1, 1, 0, 0},
                            {3, 0, 1, 1},
                            {0, 2, 0, 1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(i - j) <= 2) band.at(i, j) = m[i][j];
    band.factor();
    // b = A * [1, 2, 3, 4]
    std::vector<double> x_true = {1, 2, 3, 4};
    std::vector<double> b(4, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) b[i] += m[i][j] * x_true[j];
    const auto x = band.solve(b);
    for (int i = 0; i < 4; ++i) CHECK(x[i] == doctest::Approx(x_true[i]));
}

TEST_CASE("banded LU flags exact singularity") {
    BandedLU band(3, 1, 1);
    // second column identically zero
    band.at(0, 0) = 1.0;
    band.at(1, 0) = 0.5;
    band.at(2, 2) = 2.0;
    CHECK_THROWS_AS(band.factor(), std::runtime_error);
}

TEST_SUITE_END();
