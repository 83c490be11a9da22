#ifndef RGGSPEC_ANALYTIC_HPP
#define RGGSPEC_ANALYTIC_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rggspec/common.hpp"
#include "rggspec/spectra.hpp"

namespace rggspec {

inline constexpr double kPi = 3.14159265358979323846;

/// Dirichlet ratio sin(w (k+1)) / sin(w) on [0, pi]: the sum of
/// e^{i j w'} over |j| <= k/2 in disguise, so it evaluates adjacency
/// spectra of banded circulants. Removable singularities at w = 0 and
/// w = pi take their limit value (k+1) (-1)^{j k}.
inline double dirichlet_ratio(double w, std::int64_t k) {
  if (k < 0) throw config_error("dirichlet_ratio requires k >= 0");
  if (!(w >= 0.0 && w <= kPi + 1e-12))
    throw config_error("dirichlet_ratio requires w in [0, pi], got w = " + std::to_string(w));
  const auto j = static_cast<std::int64_t>(std::llround(w / kPi));
  if (std::abs(w - static_cast<double>(j) * kPi) < 1e-12) {
    const double sign = ((j * k) % 2 != 0) ? -1.0 : 1.0;
    return sign * static_cast<double>(k + 1);
  }
  return std::sin(w * static_cast<double>(k + 1)) / std::sin(w);
}

namespace detail {

/// Shared eigenvalue law for regular banded circulant operators with the
/// rank-one a/n correction. The correction contributes only at frequency
/// zero, where it cancels (with the Dirichlet term) to an exact 0.
inline double banded_circulant_eigenvalue(double w, std::int64_t band, double alpha) {
  const double delta = (w == 0.0) ? 1.0 : 0.0;
  const double dir = dirichlet_ratio(w, band);
  return 1.0 - (dir - 1.0 + alpha * delta) / (static_cast<double>(band) + alpha);
}

}  // namespace detail

/// Lattice degree 2 floor(n r) for a one-dimensional grid of n points with
/// connection radius r (each vertex reaches floor(n r) neighbors per side).
inline std::int64_t grid_degree_1d(std::size_t n, double r) {
  const std::int64_t half = detail::floor_with_tol(static_cast<double>(n) * r);
  if (half < 1)
    throw config_error("radius r = " + std::to_string(r) + " is below the lattice spacing 1/" +
                       std::to_string(n) + "; the grid would have no edges");
  if (2 * half >= static_cast<std::int64_t>(n))
    throw config_error("radius reaches antipodal lattice points (2 floor(n r) >= n); "
                       "the banded eigenvalue law assumes a ball smaller than half the torus");
  return 2 * half;
}

/// Closed-form eigenvalue of the one-dimensional lattice operator at
/// frequency index m (of n): lambda_m = 1 - (Dir(m pi / n) - 1 + a d_m)
/// / (a'_n + a). With alpha = 0 this is the exact unregularized spectrum.
inline double grid_eigenvalue_1d(std::size_t m, std::size_t n, double r, double alpha = 0.0) {
  if (m >= n) throw config_error("frequency index m must lie in [0, n)");
  if (alpha < 0.0) throw config_error("regularizer must be nonnegative");
  const std::int64_t a = grid_degree_1d(n, r);
  const double w = static_cast<double>(m) * kPi / static_cast<double>(n);
  return detail::banded_circulant_eigenvalue(w, a, alpha);
}

/// All n closed-form eigenvalues of the one-dimensional lattice operator,
/// as a distribution (multiplicities included: frequencies m and n - m
/// produce equal values).
inline SpectralDistribution grid_spectrum_1d(std::size_t n, double r, double alpha = 0.0,
                                             std::string label = "grid-analytic") {
  if (n < 2) throw config_error("grid spectrum requires n >= 2");
  if (alpha < 0.0) throw config_error("regularizer must be nonnegative");
  const std::int64_t a = grid_degree_1d(n, r);
  std::vector<double> w;
  w.reserve(n);
  for (std::size_t m = 0; m < n; ++m)
    w.push_back(detail::banded_circulant_eigenvalue(
        static_cast<double>(m) * kPi / static_cast<double>(n), a, alpha));
  return SpectralDistribution(std::move(w), std::move(label));
}

/// Effective lattice degree in the constant-average-degree regime:
/// 2 floor(gamma), defined for gamma >= 2.
inline std::int64_t thermodynamic_degree(double gamma) {
  if (!(gamma >= 2.0))
    throw config_error("thermodynamic eigenvalue law requires average degree gamma >= 2, got " +
                       std::to_string(gamma));
  return 2 * detail::floor_with_tol(gamma);
}

/// Limiting eigenvalue law in the constant-average-degree regime at
/// spectral parameter w in [0, pi]:
///   lambda_w = 1 - Dir(w, g')/(g'+a) + (1 - a d_w)/(g'+a),  g' = 2 floor(gamma).
inline double thermodynamic_eigenvalue(double w, double gamma, double alpha) {
  if (alpha < 0.0) throw config_error("regularizer must be nonnegative");
  return detail::banded_circulant_eigenvalue(w, thermodynamic_degree(gamma), alpha);
}

/// The limiting law sampled at count equispaced parameters w_m = m pi / count,
/// m = 0 .. count-1 (the same frequency grid a count-vertex ring would use).
inline SpectralDistribution thermodynamic_spectrum(std::size_t count, double gamma, double alpha,
                                                   std::string label = "thermodynamic-analytic") {
  if (count < 2) throw config_error("thermodynamic spectrum requires count >= 2");
  const std::int64_t g = thermodynamic_degree(gamma);
  if (alpha < 0.0) throw config_error("regularizer must be nonnegative");
  std::vector<double> w;
  w.reserve(count);
  for (std::size_t m = 0; m < count; ++m)
    w.push_back(detail::banded_circulant_eigenvalue(
        static_cast<double>(m) * kPi / static_cast<double>(count), g, alpha));
  return SpectralDistribution(std::move(w), std::move(label));
}

/// Cubed-distance level 8 gamma / (gamma' + alpha)^2 above which the
/// random-vs-grid spectral discrepancy vanishes asymptotically in the
/// constant-average-degree regime.
inline double thermodynamic_levy_bound(double gamma, double alpha) {
  if (alpha < 0.0) throw config_error("regularizer must be nonnegative");
  const double g = static_cast<double>(thermodynamic_degree(gamma));
  return 8.0 * gamma / ((g + alpha) * (g + alpha));
}

/// Degree side condition a >= 2d shared by the concentration results.
inline bool degree_condition_ok(double average_degree, std::size_t dim) {
  return average_degree >= 2.0 * static_cast<double>(dim);
}

}  // namespace rggspec

#endif  // RGGSPEC_ANALYTIC_HPP
