#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "rggspec/graphs.hpp"

using namespace rggspec;

TEST_CASE("cell list and brute force produce identical edge sets") {
  std::mt19937_64 seeds(11);
  for (int it = 0; it < 12; ++it) {
    const std::size_t d = 1 + (it % 3);
    const std::size_t n = 40 + (it * 17) % 160;
    const double r = 0.05 + 0.02 * (it % 5);
    const Metric m = (it % 3 == 0)   ? Metric::euclidean()
                     : (it % 3 == 1) ? Metric::chebyshev()
                                     : Metric::lp(1.5);
    const PointSet pts = PointSet::random(n, d, seeds());
    auto fast = detail::rgg_edges_cell_list(pts, r, m);
    auto slow = detail::rgg_edges_brute_force(pts, r, m);
    for (auto& l : fast) std::sort(l.begin(), l.end());
    for (auto& l : slow) std::sort(l.begin(), l.end());
    REQUIRE(fast == slow);
  }
}

TEST_CASE("random geometric graphs are reproducible from the seed") {
  const GeometricGraph a = sample_rgg(200, 2, 0.08, 5);
  const GeometricGraph b = sample_rgg(200, 2, 0.08, 5);
  const GeometricGraph c = sample_rgg(200, 2, 0.08, 6);
  CHECK(a.edges() == b.edges());
  CHECK(a.edges() != c.edges());
  CHECK(a.kind() == GeometricGraph::Kind::rgg);
  REQUIRE(a.seed().has_value());
  CHECK(*a.seed() == 5);
  CHECK(a.radius() == 0.08);
  CHECK(a.dim() == 2);
}

TEST_CASE("radius bounds are enforced") {
  CHECK_THROWS_AS(sample_rgg(10, 1, 0.6, 1), config_error);
  CHECK_THROWS_AS(sample_rgg(10, 1, 0.0, 1), config_error);
  CHECK_THROWS_AS(build_dgg(16, 2, -0.1), config_error);
}

TEST_CASE("lattice graphs are vertex-transitive with the expected degree") {
  SECTION("one dimension: degree 2 floor(n r)") {
    for (auto [n, r] : {std::pair<std::size_t, double>{64, 0.05},
                        {100, 0.12},
                        {512, 0.01},
                        {49, 12.0 / 49.0},
                        {101, 0.3}}) {
      const GeometricGraph g = build_dgg(n, 1, r);
      const auto expected = static_cast<std::size_t>(
          2 * static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9)));
      for (std::size_t i = 0; i < n; ++i) REQUIRE(g.degree(i) == expected);
    }
  }
  SECTION("two dimensions: every vertex sees the same stencil") {
    const GeometricGraph g = build_dgg(144, 2, 0.2);
    const std::size_t deg = g.degree(0);
    CHECK(deg > 0);
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(g.degree(i) == deg);
  }
}

TEST_CASE("lattice graph matches the distance predicate built from coordinates") {
  // Radii chosen away from exact lattice distances, where the float and
  // integer predicates cannot disagree.
  for (auto [n, d, r] : {std::tuple<std::size_t, std::size_t, double>{60, 1, 0.123},
                         {121, 2, 0.17},
                         {64, 3, 0.3}}) {
    const GeometricGraph stencil = build_dgg(n, d, r);
    const GeometricGraph reference =
        build_geometric_graph(PointSet::lattice(n, d), r, Metric::euclidean(),
                              GeometricGraph::Kind::dgg);
    REQUIRE(stencil.edges() == reference.edges());
  }
}

TEST_CASE("boundary radii keep the boundary pair connected") {
  // r = 12/n makes the 12-step lattice offset sit exactly at distance r;
  // rounding in 12/n must not disconnect it for any n.
  for (std::size_t n : {49, 100, 1000, 4096}) {
    const GeometricGraph g = build_dgg(n, 1, 12.0 / static_cast<double>(n));
    CHECK(g.degree(0) == 24);
  }
}

TEST_CASE("antipodal lattice neighbors are single edges") {
  // Even ring with r = 1/2: offset n/2 names one vertex, not two, so the
  // graph is complete with degree n - 1.
  const GeometricGraph g = build_dgg(6, 1, 0.5);
  for (std::size_t i = 0; i < 6; ++i) REQUIRE(g.degree(i) == 5);
}

TEST_CASE("adjacency validation rejects malformed graphs") {
  using Adj = std::vector<std::vector<std::uint32_t>>;
  const Metric m = Metric::euclidean();
  // Asymmetric edge.
  CHECK_THROWS_AS(GeometricGraph::from_parts(Adj{{1}, {}}, 1, 0.1, m,
                                             GeometricGraph::Kind::rgg, std::nullopt),
                  config_error);
  // Self-loop.
  CHECK_THROWS_AS(GeometricGraph::from_parts(Adj{{0}}, 1, 0.1, m,
                                             GeometricGraph::Kind::rgg, std::nullopt),
                  config_error);
  // Unsorted list.
  CHECK_THROWS_AS(GeometricGraph::from_parts(Adj{{2, 1}, {0, 2}, {0, 1}}, 1, 0.4, m,
                                             GeometricGraph::Kind::rgg, std::nullopt),
                  config_error);
  // Out-of-range neighbor.
  CHECK_THROWS_AS(GeometricGraph::from_parts(Adj{{3}, {0}}, 1, 0.1, m,
                                             GeometricGraph::Kind::rgg, std::nullopt),
                  config_error);
}

TEST_CASE("edge accounting is consistent") {
  const GeometricGraph g = sample_rgg(150, 1, 0.06, 9);
  const auto edges = g.edges();
  CHECK(edges.size() == g.edge_count());
  CHECK(g.average_degree() ==
        Catch::Approx(2.0 * static_cast<double>(edges.size()) / 150.0));
  for (const auto& [u, v] : edges) {
    CHECK(u < v);
    CHECK(g.has_edge(u, v));
    CHECK(g.has_edge(v, u));
  }
  CHECK_FALSE(g.has_edge(0, 0));
}
