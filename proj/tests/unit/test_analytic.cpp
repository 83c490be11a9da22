#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "rggspec/analytic.hpp"
#include "rggspec/laplacian.hpp"
#include "rggspec/metrics.hpp"

using namespace rggspec;

TEST_CASE("dirichlet ratio matches the exponential-sum oracle") {
  // For even k = 2s, sin(w(k+1))/sin(w) equals 1 + 2 sum_{j<=s} cos(2jw):
  // both are the trace of the band-s circulant shift polynomial.
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    const double w = 1e-3 + (kPi - 2e-3) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const std::int64_t s = 1 + static_cast<std::int64_t>(rng() % 30);
    double oracle = 1.0;
    for (std::int64_t j = 1; j <= s; ++j) oracle += 2.0 * std::cos(2.0 * j * w);
    CHECK(dirichlet_ratio(w, 2 * s) ==
          Catch::Approx(oracle).margin(1e-10 * static_cast<double>(s)));
  }
  // Frozen spot value.
  CHECK(dirichlet_ratio(0.3, 24) == Catch::Approx(3.174063754799917).epsilon(1e-14));
  CHECK(dirichlet_ratio(1.234, 6) == Catch::Approx(0.7502310983332577).epsilon(1e-14));
}

TEST_CASE("dirichlet ratio takes its limit at the removable singularities") {
  CHECK(dirichlet_ratio(0.0, 24) == 25.0);
  CHECK(dirichlet_ratio(kPi, 24) == 25.0);   // even k: limit is +(k+1)
  CHECK(dirichlet_ratio(kPi, 3) == -4.0);    // odd k: limit alternates
  CHECK(dirichlet_ratio(0.0, 3) == 4.0);
  // Approaching the singularity continuously reaches the same value.
  CHECK(dirichlet_ratio(1e-9, 24) == Catch::Approx(25.0).epsilon(1e-6));
  CHECK(dirichlet_ratio(kPi - 1e-9, 24) == Catch::Approx(25.0).epsilon(1e-6));
  CHECK_THROWS_AS(dirichlet_ratio(-0.1, 4), config_error);
  CHECK_THROWS_AS(dirichlet_ratio(3.5, 4), config_error);
  CHECK_THROWS_AS(dirichlet_ratio(0.5, -1), config_error);
}

TEST_CASE("grid eigenvalue law reproduces frozen finite cases") {
  // n = 8, r = 1/4: lattice degree 4.
  CHECK(grid_degree_1d(8, 0.25) == 4);
  CHECK(grid_eigenvalue_1d(0, 8, 0.25) == 0.0);  // zero mode is exact
  CHECK(grid_eigenvalue_1d(1, 8, 0.25) == Catch::Approx(0.6464466094067263).epsilon(1e-14));
  CHECK(grid_eigenvalue_1d(5, 8, 0.25) == Catch::Approx(1.3535533905932737).epsilon(1e-14));
}

TEST_CASE("grid degree handles boundary rounding and range errors") {
  // 49 * (12/49) rounds to just below 12; the tolerant floor keeps 12.
  CHECK(grid_degree_1d(49, 12.0 / 49.0) == 24);
  CHECK(grid_degree_1d(4096, 12.0 / 4096.0) == 24);
  CHECK(grid_degree_1d(512, 0.01) == 10);
  CHECK_THROWS_AS(grid_degree_1d(64, 0.001), config_error);   // below lattice spacing
  CHECK_THROWS_AS(grid_degree_1d(10, 0.5), config_error);     // reaches antipode
  CHECK_THROWS_AS(grid_eigenvalue_1d(8, 8, 0.25), config_error);
}

TEST_CASE("closed form equals the independent transform route") {
  // The eigenvalue law and the FFT of the assembled first row must agree
  // for any radius and regularizer, including the frequency-zero atom
  // that the rank-one correction shifts.
  for (auto [n, r, alpha] : {std::tuple<std::size_t, double, double>{64, 0.05, 0.0},
                             {100, 0.12, 0.001},
                             {49, 12.0 / 49.0, 0.001},
                             {257, 0.03, 0.1}}) {
    const SpectralDistribution law = grid_spectrum_1d(n, r, alpha);
    const GeometricGraph g = build_dgg(n, 1, r);
    const SpectralDistribution fft =
        eigenvalues_circulant(assemble_laplacian_circulant(g, alpha));
    REQUIRE(law.size() == fft.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, std::abs(law.values()[i] - fft.values()[i]));
    REQUIRE(worst <= 1e-11);
  }
}

TEST_CASE("thermodynamic law reduces to the grid law when degrees align") {
  // With r = gamma/n and 2 floor(n r) = 2 floor(gamma), the limit law
  // sampled on the ring frequencies IS the finite spectrum.
  const std::size_t n = 49;
  const double gamma = 12.0, alpha = 0.001;
  const SpectralDistribution finite = grid_spectrum_1d(n, gamma / n, alpha);
  const SpectralDistribution limit = thermodynamic_spectrum(n, gamma, alpha);
  REQUIRE(finite.values() == limit.values());  // bit-identical
  CHECK(ks_distance(finite, limit) == 0.0);
}

TEST_CASE("thermodynamic parameters are validated") {
  CHECK(thermodynamic_degree(12.0) == 24);
  CHECK(thermodynamic_degree(2.0) == 4);
  CHECK(thermodynamic_degree(2.5) == 4);
  CHECK_THROWS_AS(thermodynamic_degree(1.5), config_error);
  CHECK_THROWS_AS(thermodynamic_eigenvalue(0.5, 12.0, -1.0), config_error);
  CHECK(thermodynamic_eigenvalue(0.0, 12.0, 0.001) == 0.0);  // exact zero mode
}

TEST_CASE("the concentration threshold matches its frozen value") {
  CHECK(thermodynamic_levy_bound(12.0, 0.001) ==
        Catch::Approx(0.16665277864578507).epsilon(1e-15));
  CHECK(thermodynamic_levy_bound(2.5, 0.0) == Catch::Approx(1.25).epsilon(1e-15));
}

TEST_CASE("degree side condition compares against twice the dimension") {
  CHECK(degree_condition_ok(2.0, 1));
  CHECK_FALSE(degree_condition_ok(1.9, 1));
  CHECK(degree_condition_ok(4.0, 2));
  CHECK_FALSE(degree_condition_ok(3.9, 2));
}

TEST_CASE("eigenvalues of the grid law stay within the operator range") {
  for (std::size_t n : {64, 512}) {
    const SpectralDistribution f = grid_spectrum_1d(n, 0.05, 0.001);
    CHECK(f.min() >= -1e-12);
    CHECK(f.max() <= 2.0 + 1e-12);
    CHECK(std::abs(f.min()) <= 1e-12);
  }
}
