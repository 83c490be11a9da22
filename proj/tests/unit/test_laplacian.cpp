#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rggspec/laplacian.hpp"

using namespace rggspec;

namespace {

GeometricGraph path3() {
  // 0 - 1 - 2 on a line; radius/metric are bookkeeping only here.
  std::vector<std::vector<std::uint32_t>> adj{{1}, {0, 2}, {1}};
  return GeometricGraph::from_parts(std::move(adj), 1, 0.3, Metric::euclidean(),
                                    GeometricGraph::Kind::rgg, 1);
}

}  // namespace

TEST_CASE("unregularized entries follow the normalized form") {
  const RegularizedLaplacian L = assemble_laplacian(path3(), 0.0);
  const Eigen::MatrixXd m = L.dense();
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 1) == 1.0);
  CHECK(m(0, 1) == Catch::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m(1, 2) == Catch::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(m(0, 2) == 0.0);
  CHECK(m == m.transpose());
  CHECK(L.trace() == Catch::Approx(3.0));
}

TEST_CASE("regularized entries add the rank-one correction everywhere") {
  const double alpha = 0.1;
  const RegularizedLaplacian L = assemble_laplacian(path3(), alpha);
  const Eigen::MatrixXd m = L.dense();
  const double n = 3.0;
  auto entry = [&](bool diag, bool adj, double di, double dj) {
    const double v = -((adj ? 1.0 : 0.0) + alpha / n) / std::sqrt((di + alpha) * (dj + alpha));
    return diag ? 1.0 + v : v;
  };
  CHECK(m(0, 0) == entry(true, false, 1, 1));
  CHECK(m(1, 1) == entry(true, false, 2, 2));
  CHECK(m(0, 1) == entry(false, true, 1, 2));
  CHECK(m(0, 2) == entry(false, false, 1, 1));  // non-edges still get -alpha/n scaling
  CHECK(m(0, 2) < 0.0);
}

TEST_CASE("square-root degree vector is annihilated") {
  // (deg_i + alpha)^{1/2} is an exact null vector of the operator; in
  // floats the residual stays at rounding scale.
  for (double alpha : {0.0, 0.001, 0.5}) {
    const GeometricGraph g = sample_rgg(120, 1, 0.1, 3);
    const RegularizedLaplacian L = assemble_laplacian(g, alpha);
    Eigen::VectorXd v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = std::sqrt(static_cast<double>(g.degree(i)) + alpha);
    const double resid = (L.dense() * v).cwiseAbs().maxCoeff();
    CHECK(resid <= 1e-12 * static_cast<double>(g.size()));
  }
}

TEST_CASE("isolated vertices with alpha zero are rejected by name") {
  std::vector<std::vector<std::uint32_t>> adj{{1}, {0}, {}};
  const GeometricGraph g = GeometricGraph::from_parts(std::move(adj), 1, 0.01,
                                                      Metric::euclidean(),
                                                      GeometricGraph::Kind::rgg, 1);
  CHECK_THROWS_WITH(assemble_laplacian(g, 0.0),
                    Catch::Matchers::ContainsSubstring("vertex 2"));
  CHECK_NOTHROW(assemble_laplacian(g, 0.001));
  CHECK_THROWS_AS(assemble_laplacian(g, -0.5), config_error);
}

TEST_CASE("circulant representation expands to the dense assembly bit for bit") {
  for (auto [n, r, alpha] : {std::tuple<std::size_t, double, double>{16, 0.1, 0.0},
                             {80, 0.05, 0.001},
                             {101, 0.2, 0.1},
                             {64, 3.0 / 64.0, 0.001}}) {
    const GeometricGraph g = build_dgg(n, 1, r);
    const RegularizedLaplacian dense = assemble_laplacian(g, alpha);
    const RegularizedLaplacian circ = assemble_laplacian_circulant(g, alpha);
    REQUIRE(circ.repr() == RegularizedLaplacian::Repr::circulant);
    REQUIRE(circ.size() == n);
    const Eigen::MatrixXd a = dense.dense();
    const Eigen::MatrixXd b = circ.to_dense();
    REQUIRE(a == b);  // same entries through the same helper: exact equality
    CHECK(circ.trace() == Catch::Approx(dense.trace()).epsilon(1e-15));
  }
}

TEST_CASE("circulant assembly is restricted to one-dimensional lattices") {
  const GeometricGraph rgg = sample_rgg(32, 1, 0.2, 4);
  CHECK_THROWS_AS(assemble_laplacian_circulant(rgg, 0.0), config_error);
  const GeometricGraph dgg2 = build_dgg(64, 2, 0.2);
  CHECK_THROWS_AS(assemble_laplacian_circulant(dgg2, 0.0), config_error);
}

TEST_CASE("first-row constructor rejects asymmetric rows") {
  Eigen::VectorXd row(4);
  row << 1.0, -0.25, -0.5, -0.125;  // row[1] != row[3]
  CHECK_THROWS_AS(RegularizedLaplacian::from_first_row(row, 0.0, {}), numeric_error);
}

TEST_CASE("construction metadata is carried to the operator") {
  const GeometricGraph g = build_dgg(25, 1, 0.2);
  const RegularizedLaplacian L = assemble_laplacian_circulant(g, 0.001);
  CHECK(L.alpha() == 0.001);
  CHECK(L.source().graph_kind == GeometricGraph::Kind::dgg);
  CHECK(L.source().dim == 1);
  CHECK(L.source().radius == 0.2);
  CHECK(L.source().metric == "euclidean");
  CHECK_FALSE(L.source().seed.has_value());
}
