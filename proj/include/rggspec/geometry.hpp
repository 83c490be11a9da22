#ifndef RGGSPEC_GEOMETRY_HPP
#define RGGSPEC_GEOMETRY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rggspec/common.hpp"

namespace rggspec {

/// Distance function on the unit torus, applied per axis with the
/// minimum-image convention.
struct Metric {
  enum class Family { euclidean, chebyshev, lp };

  Family family = Family::euclidean;
  double p = 2.0;  // exponent, lp family only

  static Metric euclidean() { return {Family::euclidean, 2.0}; }
  static Metric chebyshev() { return {Family::chebyshev, 0.0}; }
  static Metric lp(double p) {
    if (!(p >= 1.0)) throw config_error("lp metric requires p >= 1, got p = " + std::to_string(p));
    return {Family::lp, p};
  }

  std::string name() const {
    switch (family) {
      case Family::euclidean: return "euclidean";
      case Family::chebyshev: return "chebyshev";
      case Family::lp: return "lp:" + std::to_string(p);
    }
    return "?";
  }

  static Metric parse(const std::string& s) {
    if (s == "euclidean") return euclidean();
    if (s == "chebyshev") return chebyshev();
    if (s.rfind("lp:", 0) == 0) return lp(std::stod(s.substr(3)));
    throw config_error("unknown metric '" + s + "' (expected euclidean, chebyshev, or lp:<p>)");
  }

  friend bool operator==(const Metric& a, const Metric& b) {
    return a.family == b.family && (a.family != Family::lp || a.p == b.p);
  }
};

namespace detail {

// Reduce a coordinate to [0, 1). floor() handles negatives; the wrap at
// the top guards against c - floor(c) rounding up to exactly 1.
inline double wrap_unit(double c) {
  double r = c - std::floor(c);
  if (r >= 1.0) r = 0.0;
  return r;
}

// Minimum-image separation along one axis; both inputs in [0, 1).
inline double axis_delta(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, 1.0 - d);
}

inline double torus_distance_raw(const double* a, const double* b, std::size_t dim,
                                 const Metric& m) {
  switch (m.family) {
    case Metric::Family::euclidean: {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = axis_delta(a[k], b[k]);
        s += d * d;
      }
      return std::sqrt(s);
    }
    case Metric::Family::chebyshev: {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s = std::max(s, axis_delta(a[k], b[k]));
      return s;
    }
    case Metric::Family::lp: {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) s += std::pow(axis_delta(a[k], b[k]), m.p);
      return std::pow(s, 1.0 / m.p);
    }
  }
  return 0.0;
}

}  // namespace detail

/// A point on the d-dimensional unit torus. Coordinates are reduced
/// mod 1 at construction and never re-normalized afterwards.
class Point {
 public:
  explicit Point(std::vector<double> coords) : c_(std::move(coords)) {
    if (c_.empty()) throw config_error("Point requires dimension >= 1");
    for (double& v : c_) v = detail::wrap_unit(v);
  }
  Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t k) const { return c_[k]; }
  std::span<const double> coords() const { return c_; }

 private:
  std::vector<double> c_;
};

inline double torus_distance(std::span<const double> a, std::span<const double> b,
                             const Metric& m = Metric::euclidean()) {
  if (a.size() != b.size())
    throw config_error("torus_distance: dimension mismatch (" + std::to_string(a.size()) +
                       " vs " + std::to_string(b.size()) + ")");
  return detail::torus_distance_raw(a.data(), b.data(), a.size(), m);
}

inline double torus_distance(const Point& a, const Point& b,
                             const Metric& m = Metric::euclidean()) {
  return torus_distance(a.coords(), b.coords(), m);
}

/// Volume of the unit ball of the given metric in d dimensions.
/// euclidean: pi^{d/2} / Gamma(d/2 + 1); chebyshev: 2^d;
/// lp: (2 Gamma(1 + 1/p))^d / Gamma(1 + d/p).
inline double unit_ball_volume(std::size_t d, const Metric& m = Metric::euclidean()) {
  if (d < 1) throw config_error("unit_ball_volume requires d >= 1");
  const double dd = static_cast<double>(d);
  switch (m.family) {
    case Metric::Family::euclidean:
      // Exact closed forms at low dimension: downstream radius rules divide
      // by these, and d = 1 in particular must divide by exactly 2.
      if (d == 1) return 2.0;
      if (d == 2) return 3.14159265358979323846;
      if (d == 3) return 4.0 / 3.0 * 3.14159265358979323846;
      return std::pow(std::acos(-1.0), dd / 2.0) / std::tgamma(dd / 2.0 + 1.0);
    case Metric::Family::chebyshev:
      return std::pow(2.0, dd);
    case Metric::Family::lp:
      return std::pow(2.0 * std::tgamma(1.0 + 1.0 / m.p), dd) / std::tgamma(1.0 + dd / m.p);
  }
  return 0.0;
}

/// Ordered list of n torus points, either uniform random (with seed
/// provenance) or the regular n^{1/d}-per-axis lattice. Immutable.
class PointSet {
 public:
  enum class Kind { random, lattice };

  /// n points sampled i.i.d. uniformly on [0,1)^d, reproducible from the
  /// seed. Generator: mt19937_64; each coordinate is (next() >> 11) * 2^-53,
  /// consumed point-major, axis-minor.
  static PointSet random(std::size_t n, std::size_t dim, std::uint64_t seed) {
    check_shape(n, dim);
    std::vector<double> flat;
    flat.reserve(n * dim);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n * dim; ++i)
      flat.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
    return PointSet(std::move(flat), dim, Kind::random, seed);
  }

  /// The n-point grid with per-axis spacing n^{-1/d}. Requires n = k^d.
  static PointSet lattice(std::size_t n, std::size_t dim) {
    check_shape(n, dim);
    const std::size_t k = lattice_side(n, dim);
    std::vector<double> flat(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t rem = i;
      for (std::size_t ax = dim; ax-- > 0;) {
        flat[i * dim + ax] = static_cast<double>(rem % k) / static_cast<double>(k);
        rem /= k;
      }
    }
    return PointSet(std::move(flat), dim, Kind::lattice, std::nullopt);
  }

  /// Points per axis for an n-point lattice; throws unless n = k^d exactly.
  static std::size_t lattice_side(std::size_t n, std::size_t dim) {
    const std::size_t k = static_cast<std::size_t>(
        std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(dim))));
    std::size_t p = 1;
    for (std::size_t i = 0; i < dim; ++i) p *= k;
    if (k < 1 || p != n)
      throw config_error("lattice requires n to be a perfect d-th power, got n = " +
                         std::to_string(n) + ", d = " + std::to_string(dim));
    return k;
  }

  /// Wraps externally supplied coordinates (reduced mod 1).
  PointSet(std::vector<double> flat, std::size_t dim, Kind kind,
           std::optional<std::uint64_t> seed)
      : flat_(std::move(flat)), dim_(dim), kind_(kind), seed_(seed) {
    if (dim_ < 1 || flat_.empty() || flat_.size() % dim_ != 0)
      throw config_error("PointSet: coordinate array is not n x d");
    if (kind_ == Kind::lattice && seed_)
      throw config_error("PointSet: lattice sets carry no seed");
    for (double& v : flat_) v = detail::wrap_unit(v);
  }

  std::size_t size() const { return flat_.size() / dim_; }
  std::size_t dim() const { return dim_; }
  Kind kind() const { return kind_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  std::span<const double> point(std::size_t i) const {
    return {flat_.data() + i * dim_, dim_};
  }
  const std::vector<double>& coords() const { return flat_; }

 private:
  static void check_shape(std::size_t n, std::size_t dim) {
    if (n < 1) throw config_error("PointSet requires n >= 1");
    if (dim < 1) throw config_error("PointSet requires d >= 1");
  }

  std::vector<double> flat_;
  std::size_t dim_;
  Kind kind_;
  std::optional<std::uint64_t> seed_;
};

}  // namespace rggspec

#endif  // RGGSPEC_GEOMETRY_HPP
