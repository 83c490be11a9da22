#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "rggspec/io.hpp"

using namespace rggspec;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("rggspec_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("fnv1a64 matches published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(to_hex(0xcbf29ce484222325ULL) == "cbf29ce484222325");
}

TEST_CASE("eigenvalue CSVs round-trip exactly") {
  TempDir tmp;
  const fs::path file = tmp.path / "eigs.csv";
  const SpectralDistribution f(
      {0.0, 1e-300, -0.3333333333333333, 0.1, 1.9999999999999998, 2.0}, "roundtrip");
  write_eigenvalue_csv(f, file);
  const SpectralDistribution g = read_eigenvalue_csv(file);
  REQUIRE(g.size() == f.size());
  CHECK(g.values() == f.values());  // bit-exact through 17 significant digits
  CHECK(g.label() == "eigs");

  write_text_file(file, "lambda\nnot_a_number\n");
  CHECK_THROWS_AS(read_eigenvalue_csv(file), io_error);
  write_text_file(file, "wrong_header\n1.0\n");
  CHECK_THROWS_AS(read_eigenvalue_csv(file), io_error);
  CHECK_THROWS_AS(read_eigenvalue_csv(tmp.path / "missing.csv"), io_error);
}

TEST_CASE("cdf CSVs sample the distribution on the given grid") {
  const SpectralDistribution f({0.0, 2.0});
  CHECK(cdf_csv(f, {-1.0, 1.0, 3.0}) == "x,F\n-1,0\n1,0.5\n3,1\n");
  CHECK(cdf_csv(f, {}) == "x,F\n");  // empty grid: header only
  TempDir tmp;
  CHECK_THROWS_AS(write_cdf_csv(f, {1.0, 0.0}, tmp.path / "bad.csv"), config_error);
}

TEST_CASE("grids are inclusive and evenly spaced") {
  const std::vector<double> g = make_grid(0.0, 2.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 2.0);
  CHECK(g[2] == 1.0);
  CHECK_THROWS_AS(make_grid(0.0, 2.0, 1), config_error);
  CHECK_THROWS_AS(make_grid(2.0, 0.0, 5), config_error);
}

TEST_CASE("edge lists round-trip with their sidecar") {
  TempDir tmp;
  const fs::path file = tmp.path / "graph.csv";
  const GeometricGraph g = sample_rgg(60, 2, 0.15, 77);
  write_edges_csv(g, file);
  REQUIRE(fs::exists(file));
  REQUIRE(fs::exists(tmp.path / "graph.csv.json"));
  const GeometricGraph back = read_edges_csv(file);
  CHECK(back.size() == g.size());
  CHECK(back.dim() == g.dim());
  CHECK(back.radius() == g.radius());
  CHECK(back.kind() == g.kind());
  REQUIRE(back.seed().has_value());
  CHECK(*back.seed() == 77);
  CHECK(back.edges() == g.edges());
}

TEST_CASE("manifests record checksums that detect corruption") {
  TempDir tmp;
  write_text_file(tmp.path / "a.csv", "lambda\n1\n");
  write_text_file(tmp.path / "b.csv", "x,F\n0,0\n");

  RunManifest m;
  m.config = nlohmann::json{{"regime", "dense"}};
  m.add_stage("solve", 12.5);
  m.outputs = {"a.csv", "b.csv"};
  m.write(tmp.path);
  REQUIRE(fs::exists(tmp.path / "manifest.json"));
  CHECK(verify_manifest(tmp.path).empty());

  // Flip one byte and the digest must catch the file.
  write_text_file(tmp.path / "b.csv", "x,F\n0,1\n");
  const auto bad = verify_manifest(tmp.path);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == "b.csv");
}

TEST_CASE("missing files surface as io errors with the path") {
  CHECK_THROWS_WITH(read_text_file("/nonexistent/rggspec/file.txt"),
                    Catch::Matchers::ContainsSubstring("/nonexistent/rggspec/file.txt"));
}

TEST_CASE("doubles are formatted with full round-trip precision") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0) == "1");
  for (double v : {-2.5e-300, 1e300, 0.3333333333333333, -0.0, 2.0000000000000004}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}
