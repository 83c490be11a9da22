#ifndef RGGSPEC_GRAPHS_HPP
#define RGGSPEC_GRAPHS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rggspec/common.hpp"
#include "rggspec/geometry.hpp"

namespace rggspec {

/// Undirected simple graph produced by connecting torus points at distance
/// <= r. Stores sorted adjacency lists plus the construction parameters;
/// the point coordinates themselves are not retained.
class GeometricGraph {
 public:
  enum class Kind { rgg, dgg };

  GeometricGraph() = default;

  /// Validates and adopts prebuilt adjacency (sorted, symmetric, loop-free).
  static GeometricGraph from_parts(std::vector<std::vector<std::uint32_t>> adj,
                                   std::size_t dim, double r, Metric metric, Kind kind,
                                   std::optional<std::uint64_t> seed) {
    GeometricGraph g;
    g.adj_ = std::move(adj);
    g.dim_ = dim;
    g.r_ = r;
    g.metric_ = metric;
    g.kind_ = kind;
    g.seed_ = seed;
    g.validate();
    return g;
  }

  std::size_t size() const { return adj_.size(); }
  std::size_t dim() const { return dim_; }
  double radius() const { return r_; }
  const Metric& metric() const { return metric_; }
  Kind kind() const { return kind_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  const std::vector<std::uint32_t>& neighbors(std::size_t i) const { return adj_[i]; }
  std::size_t degree(std::size_t i) const { return adj_[i].size(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const auto& nb : adj_) twice += nb.size();
    return twice / 2;
  }

  double average_degree() const {
    if (adj_.empty()) return 0.0;
    return 2.0 * static_cast<double>(edge_count()) / static_cast<double>(adj_.size());
  }

  bool has_edge(std::uint32_t u, std::uint32_t v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Edges as (u, v) pairs with u < v, lexicographically sorted.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(edge_count());
    for (std::uint32_t u = 0; u < adj_.size(); ++u)
      for (std::uint32_t v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  void validate() const {
    const std::size_t n = adj_.size();
    if (n == 0) throw config_error("GeometricGraph: empty vertex set");
    if (dim_ < 1) throw config_error("GeometricGraph: dimension must be >= 1");
    for (std::uint32_t u = 0; u < n; ++u) {
      const auto& nb = adj_[u];
      if (!std::is_sorted(nb.begin(), nb.end()))
        throw config_error("GeometricGraph: adjacency list " + std::to_string(u) +
                           " is not sorted");
      for (std::uint32_t v : nb) {
        if (v >= n)
          throw config_error("GeometricGraph: neighbor index out of range at vertex " +
                             std::to_string(u));
        if (v == u)
          throw config_error("GeometricGraph: self-loop at vertex " + std::to_string(u));
        if (!std::binary_search(adj_[v].begin(), adj_[v].end(), u))
          throw config_error("GeometricGraph: edge (" + std::to_string(u) + ", " +
                             std::to_string(v) + ") is not symmetric");
      }
    }
  }

  std::vector<std::vector<std::uint32_t>> adj_;
  std::size_t dim_ = 0;
  double r_ = 0.0;
  Metric metric_;
  Kind kind_ = Kind::rgg;
  std::optional<std::uint64_t> seed_;
};

namespace detail {

/// All-pairs edge enumeration; the reference implementation the cell list
/// is checked against.
inline std::vector<std::vector<std::uint32_t>> rgg_edges_brute_force(
    const PointSet& pts, double r, const Metric& metric) {
  const std::size_t n = pts.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (torus_distance(pts.point(i), pts.point(j), metric) <= r) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  return adj;
}

/// Uniform-grid neighbor search on the torus. Buckets points into
/// floor(1/r)^d cells; any pair at distance <= r lies in adjacent cells
/// because the cell side is >= r (and the lp-family balls are contained
/// in the Chebyshev ball of the same radius).
inline std::vector<std::vector<std::uint32_t>> rgg_edges_cell_list(
    const PointSet& pts, double r, const Metric& metric) {
  const std::size_t n = pts.size();
  const std::size_t d = pts.dim();
  const std::size_t cells_per_axis = static_cast<std::size_t>(std::floor(1.0 / r));
  if (cells_per_axis < 3) return rgg_edges_brute_force(pts, r, metric);

  std::size_t total_cells = 1;
  for (std::size_t k = 0; k < d; ++k) {
    if (total_cells > (std::size_t(1) << 40) / cells_per_axis)
      return rgg_edges_brute_force(pts, r, metric);  // grid would dwarf the point set
    total_cells *= cells_per_axis;
  }
  if (total_cells > 16 * n + 1024) {
    // A sparse grid buys nothing; fall back rather than allocate it.
    return rgg_edges_brute_force(pts, r, metric);
  }

  auto cell_of = [&](std::size_t i) {
    std::size_t idx = 0;
    for (std::size_t ax = 0; ax < d; ++ax) {
      auto c = static_cast<std::size_t>(pts.point(i)[ax] * static_cast<double>(cells_per_axis));
      if (c >= cells_per_axis) c = cells_per_axis - 1;
      idx = idx * cells_per_axis + c;
    }
    return idx;
  };

  // Bucket sort point indices by cell (counting sort keeps it stable).
  std::vector<std::uint32_t> cell_index(n);
  std::vector<std::uint32_t> count(total_cells + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cell_index[i] = static_cast<std::uint32_t>(cell_of(i));
    ++count[cell_index[i] + 1];
  }
  for (std::size_t c = 0; c < total_cells; ++c) count[c + 1] += count[c];
  std::vector<std::uint32_t> order(n);
  {
    std::vector<std::uint32_t> cursor(count.begin(), count.end() - 1);
    for (std::uint32_t i = 0; i < n; ++i) order[cursor[cell_index[i]]++] = i;
  }

  // Offsets to the 3^d - 1 neighboring cells, wrapped per axis.
  std::vector<std::vector<int>> offsets;
  {
    std::vector<int> cur(d, -1);
    while (true) {
      if (std::any_of(cur.begin(), cur.end(), [](int v) { return v != 0; }))
        offsets.push_back(cur);
      std::size_t ax = 0;
      for (; ax < d; ++ax) {
        if (cur[ax] < 1) {
          ++cur[ax];
          break;
        }
        cur[ax] = -1;
      }
      if (ax == d) break;
    }
  }

  auto decode = [&](std::size_t idx, std::vector<std::size_t>& out) {
    for (std::size_t ax = d; ax-- > 0;) {
      out[ax] = idx % cells_per_axis;
      idx /= cells_per_axis;
    }
  };

  std::vector<std::vector<std::uint32_t>> adj(n);
  auto try_edge = [&](std::uint32_t i, std::uint32_t j) {
    if (torus_distance(pts.point(i), pts.point(j), metric) <= r) {
      adj[i].push_back(j);
      adj[j].push_back(i);
    }
  };

  std::vector<std::size_t> coord(d);
  for (std::size_t c = 0; c < total_cells; ++c) {
    const std::uint32_t begin = count[c], end = count[c + 1];
    if (begin == end) continue;
    // Pairs within the cell.
    for (std::uint32_t a = begin; a < end; ++a)
      for (std::uint32_t b = a + 1; b < end; ++b) try_edge(order[a], order[b]);
    // Pairs against each neighboring cell, visited once per unordered pair.
    decode(c, coord);
    for (const auto& off : offsets) {
      std::size_t nc = 0;
      for (std::size_t ax = 0; ax < d; ++ax) {
        const std::size_t v =
            (coord[ax] + cells_per_axis + static_cast<std::size_t>(off[ax] + 1) - 1) %
            cells_per_axis;
        nc = nc * cells_per_axis + v;
      }
      if (nc <= c) continue;  // the mirrored offset covers this pair
      const std::uint32_t nb = count[nc], ne = count[nc + 1];
      for (std::uint32_t a = begin; a < end; ++a)
        for (std::uint32_t b = nb; b < ne; ++b) try_edge(order[a], order[b]);
    }
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return adj;
}

}  // namespace detail

/// Connects every pair of points at torus distance <= r. Kind tags the
/// provenance recorded on the graph; the adjacency depends only on the
/// coordinates.
inline GeometricGraph build_geometric_graph(const PointSet& pts, double r,
                                            const Metric& metric, GeometricGraph::Kind kind) {
  if (!(r > 0.0)) throw config_error("connection radius must be positive");
  if (r > 0.5)
    throw config_error("connection radius must be <= 1/2 on the unit torus, got r = " +
                       std::to_string(r));
  auto adj = detail::rgg_edges_cell_list(pts, r, metric);
  for (auto& list : adj) std::sort(list.begin(), list.end());
  return GeometricGraph::from_parts(std::move(adj), pts.dim(), r, metric, kind, pts.seed());
}

/// Random geometric graph: n i.i.d. uniform torus points, radius r.
inline GeometricGraph sample_rgg(std::size_t n, std::size_t dim, double r,
                                 std::uint64_t seed,
                                 const Metric& metric = Metric::euclidean()) {
  return build_geometric_graph(PointSet::random(n, dim, seed), r, metric,
                               GeometricGraph::Kind::rgg);
}

/// Deterministic geometric graph on the n^{1/d}-per-axis lattice.
///
/// Built from an integer offset stencil: vertex u ~ vertex v iff their
/// integer lattice offsets m (minimum image, |m_ax| <= k/2) satisfy
/// ||m|| <= k*r. Working in integers keeps the graph exactly
/// vertex-transitive; a hair of relative slack absorbs radii like 12/n
/// whose boundary pairs land within rounding error of k*r.
inline GeometricGraph build_dgg(std::size_t n, std::size_t dim, double r,
                                const Metric& metric = Metric::euclidean()) {
  if (!(r > 0.0)) throw config_error("connection radius must be positive");
  if (r > 0.5)
    throw config_error("connection radius must be <= 1/2 on the unit torus, got r = " +
                       std::to_string(r));
  const std::size_t k = PointSet::lattice_side(n, dim);
  const double kd = static_cast<double>(k);
  const double scaled = kd * r;  // radius in lattice steps
  const double budget2 = scaled * scaled * (1.0 + 2.0 * detail::kBoundaryTol);
  const double budget1 = scaled * (1.0 + detail::kBoundaryTol);

  // Per-axis minimum-image offset range.
  const std::int64_t half = static_cast<std::int64_t>(k) / 2;

  auto offset_within = [&](const std::vector<std::int64_t>& m) {
    switch (metric.family) {
      case Metric::Family::euclidean: {
        double s = 0.0;
        for (std::int64_t v : m) s += static_cast<double>(v) * static_cast<double>(v);
        return s <= budget2;
      }
      case Metric::Family::chebyshev: {
        std::int64_t s = 0;
        for (std::int64_t v : m) s = std::max(s, std::abs(v));
        return static_cast<double>(s) <= budget1;
      }
      case Metric::Family::lp: {
        double s = 0.0;
        for (std::int64_t v : m) s += std::pow(std::abs(static_cast<double>(v)), metric.p);
        return s <= std::pow(scaled, metric.p) * (1.0 + 2.0 * detail::kBoundaryTol);
      }
    }
    return false;
  };

  // Enumerate the stencil of nonzero minimum-image offsets inside the ball.
  // Even k: the antipodal offset +k/2 and -k/2 name the same vertex, so
  // only the positive representative is kept.
  const std::int64_t lo = (k % 2 == 0) ? -half + 1 : -half;
  std::vector<std::vector<std::int64_t>> stencil;
  std::vector<std::int64_t> cur(dim, lo);
  if (k >= 2) {
    while (true) {
      const bool zero = std::all_of(cur.begin(), cur.end(), [](std::int64_t v) { return v == 0; });
      if (!zero && offset_within(cur)) stencil.push_back(cur);
      std::size_t ax = 0;
      for (; ax < dim; ++ax) {
        if (cur[ax] < half) {
          ++cur[ax];
          break;
        }
        cur[ax] = lo;
      }
      if (ax == dim) break;
    }
  }

  // Apply the stencil to every vertex. Vertex index encodes grid
  // coordinates axis-major, matching PointSet::lattice.
  std::vector<std::vector<std::uint32_t>> adj(n);
  std::vector<std::size_t> coord(dim);
  const auto kk = static_cast<std::int64_t>(k);
  for (std::size_t u = 0; u < n; ++u) {
    std::size_t rem = u;
    for (std::size_t ax = dim; ax-- > 0;) {
      coord[ax] = rem % k;
      rem /= k;
    }
    auto& list = adj[u];
    list.reserve(stencil.size());
    for (const auto& m : stencil) {
      std::size_t v = 0;
      for (std::size_t ax = 0; ax < dim; ++ax) {
        const std::int64_t c =
            (static_cast<std::int64_t>(coord[ax]) + m[ax] % kk + kk) % kk;
        v = v * k + static_cast<std::size_t>(c);
      }
      list.push_back(static_cast<std::uint32_t>(v));
    }
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return GeometricGraph::from_parts(std::move(adj), dim, r, metric,
                                    GeometricGraph::Kind::dgg, std::nullopt);
}

}  // namespace rggspec

#endif  // RGGSPEC_GRAPHS_HPP
