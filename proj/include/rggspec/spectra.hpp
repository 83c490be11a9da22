#ifndef RGGSPEC_SPECTRA_HPP
#define RGGSPEC_SPECTRA_HPP

#include <fftw3.h>
#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rggspec/common.hpp"
#include "rggspec/laplacian.hpp"

namespace rggspec {

/// A finite spectrum viewed as a probability distribution: the empirical
/// measure placing mass 1/n on each eigenvalue. Values are kept sorted.
class SpectralDistribution {
 public:
  SpectralDistribution() = default;

  explicit SpectralDistribution(std::vector<double> values, std::string label = "")
      : values_(std::move(values)), label_(std::move(label)) {
    if (values_.empty()) throw config_error("SpectralDistribution: no eigenvalues");
    for (double v : values_)
      if (!std::isfinite(v))
        throw numeric_error("SpectralDistribution: non-finite eigenvalue");
    std::sort(values_.begin(), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  const std::string& label() const { return label_; }

  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  /// Right-continuous empirical CDF: fraction of eigenvalues <= x.
  double cdf(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
  }

  /// Fraction of eigenvalues in the closed interval [lo, hi].
  double mass_in(double lo, double hi) const {
    const auto a = std::lower_bound(values_.begin(), values_.end(), lo);
    const auto b = std::upper_bound(values_.begin(), values_.end(), hi);
    return static_cast<double>(b - a) / static_cast<double>(values_.size());
  }

  double mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
  }

 private:
  std::vector<double> values_;
  std::string label_;
};

struct DenseEigenOptions {
  /// Guard rail: a dense solve is O(n^3) memory-bound work; anything past
  /// this order should use a structured representation instead.
  std::size_t max_order = 8192;
  /// Recompute eigenvectors and check the residual ||L V - V diag(w)||.
  bool verify = false;
  double verify_tol = 1e-8;
};

namespace detail {

inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m,
                                                 const DenseEigenOptions& opt) {
  const auto n = static_cast<std::size_t>(m.rows());
  if (m.rows() != m.cols()) throw config_error("eigenvalue solve requires a square matrix");
  if (n > opt.max_order)
    throw config_error("dense eigenvalue solve refused at order " + std::to_string(n) +
                       " (cap " + std::to_string(opt.max_order) +
                       "); use the circulant route for structured operators");

  const char jobz = opt.verify ? 'V' : 'N';
  Eigen::MatrixXd work = m;  // dsyev overwrites its input
  std::vector<double> w(n);
  const lapack_int info =
      LAPACKE_dsyev(LAPACK_COL_MAJOR, jobz, 'L', static_cast<lapack_int>(n), work.data(),
                    static_cast<lapack_int>(n), w.data());
  if (info != 0)
    throw numeric_error("symmetric eigenvalue solve failed to converge (info = " +
                        std::to_string(info) + ")");

  if (opt.verify) {
    // work now holds orthonormal eigenvectors column by column.
    Eigen::VectorXd evals = Eigen::Map<const Eigen::VectorXd>(w.data(), m.rows());
    const double resid =
        (m * work - work * evals.asDiagonal()).cwiseAbs().maxCoeff();
    const double bound = opt.verify_tol * static_cast<double>(n);
    if (!(resid <= bound))
      throw numeric_error("eigenvalue residual " + std::to_string(resid) +
                          " exceeds verification bound " + std::to_string(bound));
  }
  return w;
}

}  // namespace detail

/// Full spectrum of a symmetric matrix (LAPACK dsyev).
inline SpectralDistribution eigenvalues_dense(const Eigen::MatrixXd& m,
                                              const DenseEigenOptions& opt = {},
                                              std::string label = "") {
  return SpectralDistribution(detail::symmetric_eigenvalues(m, opt), std::move(label));
}

/// Full spectrum of the operator via its dense representation.
inline SpectralDistribution eigenvalues_dense(const RegularizedLaplacian& L,
                                              const DenseEigenOptions& opt = {},
                                              std::string label = "") {
  return eigenvalues_dense(L.to_dense(), opt, std::move(label));
}

/// Full spectrum of a circulant-backed operator via the DFT of its first
/// row: the eigenvalues of a circulant matrix are exactly that transform,
/// and a symmetric first row makes them real. O(n log n), no matrix formed.
inline SpectralDistribution eigenvalues_circulant(const RegularizedLaplacian& L,
                                                  std::string label = "") {
  const Eigen::VectorXd& row = L.first_row();  // throws if not circulant-backed
  const auto n = static_cast<std::size_t>(row.size());

  std::vector<double> in(row.data(), row.data() + n);
  std::vector<double> out(2 * (n / 2 + 1), 0.0);

  {
    // FFTW planning mutates shared planner state; execution does not.
    static std::mutex plan_mutex;
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_plan plan =
        fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(),
                             reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
    if (plan == nullptr) throw numeric_error("failed to plan length-" + std::to_string(n) + " DFT");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
  }

  std::vector<double> w;
  w.reserve(n);
  for (std::size_t m = 0; m <= n / 2; ++m) {
    const double re = out[2 * m];
    const double im = out[2 * m + 1];
    if (std::abs(im) > 1e-9)
      throw numeric_error("circulant spectrum has imaginary part " + std::to_string(im) +
                          " at frequency " + std::to_string(m) +
                          "; the first row is not symmetric");
    w.push_back(re);
    // Conjugate frequency n - m carries the same eigenvalue.
    if (m != 0 && 2 * m != n) w.push_back(re);
  }
  return SpectralDistribution(std::move(w), std::move(label));
}

/// Dispatches on the stored representation.
inline SpectralDistribution eigenvalues(const RegularizedLaplacian& L,
                                        const DenseEigenOptions& opt = {},
                                        std::string label = "") {
  if (L.repr() == RegularizedLaplacian::Repr::circulant)
    return eigenvalues_circulant(L, std::move(label));
  return eigenvalues_dense(L, opt, std::move(label));
}

}  // namespace rggspec

#endif  // RGGSPEC_SPECTRA_HPP
