#ifndef RGGSPEC_COMMON_HPP
#define RGGSPEC_COMMON_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rggspec {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid parameters, malformed configs, precondition violations.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singularities and numerical consistency failures.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File read/write failures.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Relative tolerance used when a quantity sits exactly on a decision
// boundary (lattice pair at distance exactly r, or n*r an exact integer).
// It absorbs the representation rounding of the radius without being able
// to bridge the gap between distinct lattice distances.
inline constexpr double kBoundaryTol = 1e-12;

// floor(x), treating values within kBoundaryTol (relative) below an
// integer as that integer. Used for a'_n = 2*floor(n*r) so that radii
// like 12/n put the boundary pair inside the ball.
inline std::int64_t floor_with_tol(double x) {
  const double nudged = x + (std::abs(x) + 1.0) * kBoundaryTol;
  return static_cast<std::int64_t>(std::floor(nudged));
}

}  // namespace detail
}  // namespace rggspec

#endif  // RGGSPEC_COMMON_HPP
