#ifndef RGGSPEC_METRICS_HPP
#define RGGSPEC_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rggspec/common.hpp"
#include "rggspec/spectra.hpp"

namespace rggspec {

/// Kolmogorov-Smirnov distance sup_x |F(x) - G(x)| between two empirical
/// CDFs. Both are right-continuous step functions, so the supremum is
/// attained at an atom of one of them.
inline double ks_distance(const SpectralDistribution& f, const SpectralDistribution& g) {
  double best = 0.0;
  auto scan = [&](const std::vector<double>& atoms) {
    for (double x : atoms) best = std::max(best, std::abs(f.cdf(x) - g.cdf(x)));
  };
  scan(f.values());
  scan(g.values());
  return best;
}

namespace detail {

/// One side of the Levy sandwich: P(x) <= Q(x + eps) + eps for all x.
/// Both sides are step functions of x that only change at atoms(P) and at
/// atoms(Q) - eps, and each is constant to the right of a breakpoint, so
/// checking every breakpoint covers every interval.
inline bool levy_one_sided(const SpectralDistribution& p, const SpectralDistribution& q,
                           double eps) {
  for (double x : p.values())
    if (p.cdf(x) > q.cdf(x + eps) + eps) return false;
  for (double qa : q.values()) {
    const double x = qa - eps;
    if (p.cdf(x) > q.cdf(x + eps) + eps) return false;
  }
  return true;
}

inline bool levy_feasible(const SpectralDistribution& f, const SpectralDistribution& g,
                          double eps) {
  return levy_one_sided(f, g, eps) && levy_one_sided(g, f, eps);
}

}  // namespace detail

/// Levy distance inf{eps > 0 : F(x - eps) - eps <= G(x) <= F(x + eps) + eps}
/// between empirical CDFs, located by bisection on the monotone feasibility
/// predicate. The result is a certified-feasible upper bound within tol of
/// the infimum, and never exceeds the KS distance (eps = KS always
/// satisfies the sandwich, and it seeds the bracket).
inline double levy_distance(const SpectralDistribution& f, const SpectralDistribution& g,
                            double tol = 1e-9) {
  if (!(tol > 0.0)) throw config_error("levy_distance requires a positive tolerance");
  if (detail::levy_feasible(f, g, 0.0)) return 0.0;

  double hi = std::min(1.0, ks_distance(f, g));
  if (!detail::levy_feasible(f, g, hi)) {
    // Feasibility at eps = KS can be lost to the last bit of rounding in
    // x + eps; step up by whole tolerances until the bracket is sound.
    hi = std::min(1.0, hi + 2.0 * tol);
    if (!detail::levy_feasible(f, g, hi)) hi = 1.0;
  }
  double lo = 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (detail::levy_feasible(f, g, mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

/// Distances from one spectrum to another, bundled for reporting.
struct DistanceReport {
  double levy = 0.0;
  double levy_cubed = 0.0;
  double ks = 0.0;
  double tolerance = 0.0;
};

inline DistanceReport measure_distances(const SpectralDistribution& f,
                                        const SpectralDistribution& g, double tol = 1e-9) {
  DistanceReport rep;
  rep.ks = ks_distance(f, g);
  rep.levy = levy_distance(f, g, tol);
  rep.levy_cubed = rep.levy * rep.levy * rep.levy;
  rep.tolerance = tol;
  return rep;
}

}  // namespace rggspec

#endif  // RGGSPEC_METRICS_HPP
