#ifndef RGGSPEC_LAPLACIAN_HPP
#define RGGSPEC_LAPLACIAN_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rggspec/common.hpp"
#include "rggspec/graphs.hpp"

namespace rggspec {

namespace detail {

/// One entry of the regularized normalized Laplacian:
///   offdiag: -(adjacency + alpha/n) / sqrt((deg_i + alpha) (deg_j + alpha))
///   diag:    1 + the same expression with adjacency = 0 (no self-loops).
/// Every representation funnels through this helper so that dense and
/// circulant expansions of the same graph agree bit for bit.
inline double laplacian_entry(bool diagonal, bool adjacent, double deg_i, double deg_j,
                              double alpha, double n) {
  const double numer = (adjacent ? 1.0 : 0.0) + alpha / n;
  const double v = -numer / std::sqrt((deg_i + alpha) * (deg_j + alpha));
  return diagonal ? 1.0 + v : v;
}

}  // namespace detail

/// Symmetric operator I - D_a^{-1/2} A_a D_a^{-1/2} where A_a = A + (a/n) J
/// and D_a adds a to every degree. Held either as a full dense matrix or,
/// for circulant-structured graphs, as its first row.
class RegularizedLaplacian {
 public:
  enum class Repr { dense, circulant };

  /// Construction parameters carried along for reporting.
  struct Source {
    GeometricGraph::Kind graph_kind = GeometricGraph::Kind::rgg;
    std::size_t dim = 0;
    double radius = 0.0;
    std::string metric = "euclidean";
    std::optional<std::uint64_t> seed;
  };

  static RegularizedLaplacian from_dense(Eigen::MatrixXd m, double alpha, Source src) {
    if (m.rows() != m.cols() || m.rows() < 1)
      throw config_error("RegularizedLaplacian: dense matrix must be square and nonempty");
    RegularizedLaplacian L;
    L.repr_ = Repr::dense;
    L.dense_ = std::move(m);
    L.alpha_ = alpha;
    L.source_ = std::move(src);
    return L;
  }

  static RegularizedLaplacian from_first_row(Eigen::VectorXd row, double alpha, Source src) {
    const auto n = row.size();
    if (n < 1) throw config_error("RegularizedLaplacian: empty first row");
    for (Eigen::Index j = 1; j < n; ++j)
      if (row[j] != row[n - j])
        throw numeric_error("RegularizedLaplacian: first row is not symmetric at offset " +
                            std::to_string(j) + "; the operator would not be symmetric");
    RegularizedLaplacian L;
    L.repr_ = Repr::circulant;
    L.row_ = std::move(row);
    L.alpha_ = alpha;
    L.source_ = std::move(src);
    return L;
  }

  Repr repr() const { return repr_; }
  double alpha() const { return alpha_; }
  const Source& source() const { return source_; }

  std::size_t size() const {
    return repr_ == Repr::dense ? static_cast<std::size_t>(dense_.rows())
                                : static_cast<std::size_t>(row_.size());
  }

  /// Dense view; expands the first row when circulant-backed.
  Eigen::MatrixXd to_dense() const {
    if (repr_ == Repr::dense) return dense_;
    const auto n = row_.size();
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row_[(j - i + n) % n];
    return m;
  }

  const Eigen::MatrixXd& dense() const {
    if (repr_ != Repr::dense)
      throw config_error("RegularizedLaplacian: not stored densely; use to_dense()");
    return dense_;
  }

  const Eigen::VectorXd& first_row() const {
    if (repr_ != Repr::circulant)
      throw config_error("RegularizedLaplacian: no circulant representation available");
    return row_;
  }

  double trace() const {
    if (repr_ == Repr::dense) return dense_.trace();
    return static_cast<double>(row_.size()) * row_[0];
  }

 private:
  Repr repr_ = Repr::dense;
  Eigen::MatrixXd dense_;
  Eigen::VectorXd row_;
  double alpha_ = 0.0;
  Source source_;
};

namespace detail {

inline RegularizedLaplacian::Source source_of(const GeometricGraph& g) {
  return {g.kind(), g.dim(), g.radius(), g.metric().name(), g.seed()};
}

inline void check_alpha(const GeometricGraph& g, double alpha) {
  if (alpha < 0.0)
    throw config_error("regularizer must be nonnegative, got alpha = " + std::to_string(alpha));
  if (alpha == 0.0)
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.degree(i) == 0)
        throw numeric_error("vertex " + std::to_string(i) +
                            " is isolated and alpha = 0 makes its degree scaling singular; "
                            "use alpha > 0 or a denser graph");
}

}  // namespace detail

/// Assembles the dense operator for an arbitrary geometric graph.
inline RegularizedLaplacian assemble_laplacian(const GeometricGraph& g, double alpha) {
  detail::check_alpha(g, alpha);
  const std::size_t n = g.size();
  const auto nd = static_cast<double>(n);
  std::vector<double> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = static_cast<double>(g.degree(i));

  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = detail::laplacian_entry(true, false, deg[i], deg[i], alpha, nd);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v =
          detail::laplacian_entry(false, g.has_edge(static_cast<std::uint32_t>(i),
                                                    static_cast<std::uint32_t>(j)),
                                  deg[i], deg[j], alpha, nd);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return RegularizedLaplacian::from_dense(std::move(m), alpha, detail::source_of(g));
}

/// Assembles the first-row (circulant) representation. Requires a
/// one-dimensional lattice graph: with vertices in grid order its
/// adjacency depends only on (j - i) mod n, and the rank-one a/n
/// correction is circulant too, so the whole operator is.
inline RegularizedLaplacian assemble_laplacian_circulant(const GeometricGraph& g,
                                                         double alpha) {
  if (g.kind() != GeometricGraph::Kind::dgg || g.dim() != 1)
    throw config_error(
        "circulant assembly requires a one-dimensional lattice graph; "
        "random or higher-dimensional graphs need the dense path");
  detail::check_alpha(g, alpha);
  const std::size_t n = g.size();
  const auto nd = static_cast<double>(n);
  const auto deg = static_cast<double>(g.degree(0));

  Eigen::VectorXd row(n);
  row[0] = detail::laplacian_entry(true, false, deg, deg, alpha, nd);
  for (std::size_t j = 1; j < n; ++j)
    row[j] = detail::laplacian_entry(false, g.has_edge(0, static_cast<std::uint32_t>(j)),
                                     deg, deg, alpha, nd);
  return RegularizedLaplacian::from_first_row(std::move(row), alpha, detail::source_of(g));
}

}  // namespace rggspec

#endif  // RGGSPEC_LAPLACIAN_HPP
