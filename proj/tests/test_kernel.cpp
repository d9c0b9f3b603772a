#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "core/kernel.hpp"
#include "core/window.hpp"
#include "support/oracles.hpp"

using olawin::ConcentrationKernel;

TEST_CASE("build_toeplitz entries") {
    const ConcentrationKernel k = olawin::build_toeplitz(128, 2.75);
    CHECK(k.entries[0] == doctest::Approx(8.639379797371931406).epsilon(1e-15));
    CHECK(k.entries[0] == std::numbers::pi * 2.75);
    // 128 sin(2.75 pi / 128), frozen from a 40-digit evaluation
    CHECK(k.entries[1] == doctest::Approx(8.632821704148999411).epsilon(1e-14));

    // element (i, j) equals element (j, i): both sides from the dense oracle
    const std::vector<double> dense = oracle::dense_kernel(128, 2.75);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; ++t) {
        const std::size_t i = static_cast<std::size_t>(rng() % 128);
        const std::size_t j = static_cast<std::size_t>(rng() % 128);
        CHECK(dense[i * 128 + j] == dense[j * 128 + i]);
        const std::size_t d = i > j ? i - j : j - i;
        CHECK(k.entries[d] == doctest::Approx(dense[i * 128 + j]).epsilon(1e-15));
    }
}

TEST_CASE("build_toeplitz validates alpha") {
    CHECK_THROWS_AS(olawin::build_toeplitz(16, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(olawin::build_toeplitz(16, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(olawin::build_toeplitz(16, 16.0), std::invalid_argument);
    CHECK_THROWS_AS(olawin::build_toeplitz(1, 0.5), std::invalid_argument);
}

TEST_CASE("kernel is numerically positive semi-definite at test sizes") {
    for (double alpha : {0.5, 2.0, 2.75, 5.0}) {
        const std::vector<double> ev = oracle::eigenvalues(oracle::dense_kernel(24, alpha), 24);
        CHECK(ev.front() >= -1e-8 * ev.back());
    }
}

TEST_CASE("matvec and quadratic form agree with the dense oracle") {
    const std::int64_t n = 24;
    const ConcentrationKernel k = olawin::build_toeplitz(n, 2.0);
    const std::vector<double> dense = oracle::dense_kernel(n, 2.0);
    std::mt19937_64 rng(11);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;

    std::vector<double> y(static_cast<std::size_t>(n));
    olawin::kernel_matvec(k, x, y);
    for (std::int64_t i = 0; i < n; ++i) {
        double ref = 0.0;
        for (std::int64_t j = 0; j < n; ++j)
            ref += dense[static_cast<std::size_t>(i * n + j)] * x[static_cast<std::size_t>(j)];
        CHECK(y[static_cast<std::size_t>(i)] == doctest::Approx(ref).epsilon(1e-12));
    }
    CHECK(olawin::kernel_quadratic_form(k, x) ==
          doctest::Approx(oracle::quad_form(dense, x)).epsilon(1e-12));
}

TEST_CASE("concentration ratio is scale invariant and matches the frozen value") {
    const olawin::Window hs = olawin::half_sine(128);
    const ConcentrationKernel k = olawin::build_toeplitz(128, 2.75);
    const olawin::ConcentrationReport rep = olawin::concentration_ratio(hs, k);

    olawin::Window scaled = hs;
    for (double& s : scaled.samples) s *= 3.7;
    const olawin::ConcentrationReport rep2 = olawin::concentration_ratio(scaled, k);
    CHECK(rep2.tau_linear == doctest::Approx(rep.tau_linear).epsilon(1e-12));

    // frozen via an independent dense evaluation of the same quotient
    CHECK(rep.tau_db == doctest::Approx(16.6558709323).epsilon(1e-9));
    CHECK(rep.tau_db == doctest::Approx(10.0 * std::log10(rep.tau_linear)).epsilon(1e-15));
    CHECK(rep.window_label == "half-sine");
    CHECK(rep.kernel_alpha == 2.75);
}

TEST_CASE("concentration ratio rejects mismatches and zero windows") {
    const ConcentrationKernel k = olawin::build_toeplitz(16, 2.0);
    CHECK_THROWS_AS(olawin::concentration_ratio(olawin::half_sine(32), k),
                    std::invalid_argument);
    olawin::Window z = olawin::half_sine(16);
    for (double& s : z.samples) s = 0.0;
    CHECK_THROWS_AS(olawin::concentration_ratio(z, k), std::invalid_argument);
}

TEST_CASE("tau at the dominant eigenvector equals the normalized top eigenvalue") {
    const std::int64_t n = 32;
    const double alpha = 2.0;
    const oracle::EigenPair top = oracle::dominant_eigenpair(oracle::dense_kernel(n, alpha), n);
    olawin::Window w;
    w.samples = top.vector;
    w.overlap = n / 2;
    w.label = "eigvec";
    const ConcentrationKernel k = olawin::build_toeplitz(n, alpha);
    const olawin::ConcentrationReport rep = olawin::concentration_ratio(w, k);
    CHECK(rep.tau_linear ==
          doctest::Approx(top.value / k.diagonal()).epsilon(1e-10));
}

TEST_CASE("dpss_unconstrained: L=2 closed form") {
    const olawin::Window w = olawin::dpss_unconstrained(2, 0.5);
    CHECK(w.samples[0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
    CHECK(w.samples[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
}

TEST_CASE("dpss_unconstrained matches the dense eigendecomposition oracle") {
    for (std::int64_t n : {8, 16}) {
        const double alpha = 2.0;
        const olawin::Window w = olawin::dpss_unconstrained(n, alpha);
        const oracle::EigenPair top =
            oracle::dominant_eigenpair(oracle::dense_kernel(n, alpha), n);
        double norm2 = 0.0;
        for (double v : w.samples) norm2 += v * v;
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-12));
        for (std::int64_t i = 0; i < n; ++i)
            CHECK(w.samples[static_cast<std::size_t>(i)] ==
                  doctest::Approx(top.vector[static_cast<std::size_t>(i)]).epsilon(1e-8));
        for (double v : w.samples) CHECK(v > 0.0);  // order-0 sequence is single-signed
    }
}

TEST_CASE("dpss_unconstrained eigenvalue matches the dense oracle at small L") {
    for (std::int64_t n : {4, 6, 8}) {
        const olawin::Window w = olawin::dpss_unconstrained(n, 1.5);
        const ConcentrationKernel k = olawin::build_toeplitz(n, 1.5);
        const double lambda_norm = olawin::concentration_ratio(w, k).tau_linear;
        const oracle::EigenPair top =
            oracle::dominant_eigenpair(oracle::dense_kernel(n, 1.5), n);
        CHECK(lambda_norm == doctest::Approx(top.value / k.diagonal()).epsilon(1e-10));
    }
}

TEST_CASE("dpss_unconstrained output is symmetric") {
    const olawin::Window w = olawin::dpss_unconstrained(32, 2.5);
    for (std::int64_t k = 0; k < 16; ++k)
        CHECK(std::abs(w.samples[static_cast<std::size_t>(k)] -
                       w.samples[static_cast<std::size_t>(31 - k)]) <= 1e-8);
}

TEST_CASE("dpss maximizes the Rayleigh quotient over random unit vectors") {
    const std::int64_t n = 16;
    const ConcentrationKernel k = olawin::build_toeplitz(n, 2.0);
    const olawin::Window dpss = olawin::dpss_unconstrained(n, 2.0);
    const double tau_star = olawin::concentration_ratio(dpss, k).tau_linear;
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        olawin::Window w;
        w.samples.resize(static_cast<std::size_t>(n));
        for (double& v : w.samples)
            v = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
        w.overlap = n / 2;
        w.label = "random";
        CHECK(olawin::concentration_ratio(w, k).tau_linear <= tau_star * (1.0 + 1e-12));
    }
}

TEST_CASE("tau is continuous in alpha near 2.75") {
    const olawin::Window hs = olawin::half_sine(128);
    const double t1 =
        olawin::concentration_ratio(hs, olawin::build_toeplitz(128, 2.75)).tau_linear;
    const double t2 =
        olawin::concentration_ratio(hs, olawin::build_toeplitz(128, 2.75 + 1e-6)).tau_linear;
    CHECK(std::abs(t2 - t1) <= 1e-3);
}
