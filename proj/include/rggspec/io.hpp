#ifndef RGGSPEC_IO_HPP
#define RGGSPEC_IO_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rggspec/common.hpp"
#include "rggspec/config.hpp"
#include "rggspec/graphs.hpp"
#include "rggspec/spectra.hpp"

namespace rggspec {

/// 64-bit FNV-1a over a byte string. Any single-byte change flips the digest.
inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string to_hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Shortest decimal form that round-trips a double (17 significant digits).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("read failure on '" + path.string() + "'");
  return ss.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
      throw io_error("cannot create directory '" + path.parent_path().string() +
                     "': " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw io_error("write failure on '" + path.string() + "'");
}

inline std::uint64_t checksum_file(const std::filesystem::path& path) {
  return fnv1a64(read_text_file(path));
}

/// Uniformly spaced evaluation grid, endpoints included.
inline std::vector<double> make_grid(double lo, double hi, std::size_t points) {
  if (points < 2) throw config_error("grid needs at least 2 points");
  if (!(hi > lo)) throw config_error("grid upper bound must exceed lower bound");
  std::vector<double> g(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) g[i] = lo + step * static_cast<double>(i);
  g.back() = hi;
  return g;
}

/// One eigenvalue per row under a `lambda` header; round-trips exactly.
inline std::string eigenvalue_csv(const SpectralDistribution& f) {
  std::string out = "lambda\n";
  for (double v : f.values()) {
    out += format_double(v);
    out += '\n';
  }
  return out;
}

inline void write_eigenvalue_csv(const SpectralDistribution& f,
                                 const std::filesystem::path& path) {
  write_text_file(path, eigenvalue_csv(f));
}

inline SpectralDistribution read_eigenvalue_csv(const std::filesystem::path& path,
                                                std::string label = "") {
  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "lambda")
    throw io_error("'" + path.string() + "' is not an eigenvalue CSV (expected 'lambda' header)");
  std::vector<double> vals;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(line.c_str(), &end);
    if (end == line.c_str() || *end != '\0')
      throw io_error("'" + path.string() + "' line " + std::to_string(lineno) +
                     ": cannot parse '" + line + "' as a number");
    vals.push_back(v);
  }
  if (label.empty()) label = path.stem().string();
  return SpectralDistribution(std::move(vals), std::move(label));
}

/// CDF of f sampled on a sorted grid, as `x,F` rows.
inline std::string cdf_csv(const SpectralDistribution& f, const std::vector<double>& grid) {
  std::string out = "x,F\n";
  for (double x : grid) {
    out += format_double(x);
    out += ',';
    out += format_double(f.cdf(x));
    out += '\n';
  }
  return out;
}

inline void write_cdf_csv(const SpectralDistribution& f, const std::vector<double>& grid,
                          const std::filesystem::path& path) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] < grid[i - 1]) throw config_error("CDF grid must be sorted");
  write_text_file(path, cdf_csv(f, grid));
}

/// Edge list as `u,v` rows (u < v) plus a JSON sidecar (same path with
/// `.json` appended) carrying the construction parameters.
inline void write_edges_csv(const GeometricGraph& g, const std::filesystem::path& path) {
  std::string out = "u,v\n";
  for (const auto& [u, v] : g.edges())
    out += std::to_string(u) + "," + std::to_string(v) + "\n";
  write_text_file(path, out);

  nlohmann::json side;
  side["n"] = g.size();
  side["d"] = g.dim();
  side["r"] = g.radius();
  side["metric"] = g.metric().name();
  side["kind"] = g.kind() == GeometricGraph::Kind::rgg ? "rgg" : "dgg";
  if (g.seed()) side["seed"] = *g.seed();
  side["edges"] = g.edge_count();
  side["average_degree"] = g.average_degree();
  write_text_file(path.string() + ".json", side.dump(2) + "\n");
}

/// Reads an edge-list CSV (with its sidecar) back into a graph.
inline GeometricGraph read_edges_csv(const std::filesystem::path& path) {
  nlohmann::json side;
  try {
    side = nlohmann::json::parse(read_text_file(path.string() + ".json"));
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error("sidecar '" + path.string() + ".json' is not valid JSON: " + e.what());
  }
  const auto n = side.at("n").get<std::size_t>();
  std::vector<std::vector<std::uint32_t>> adj(n);

  const std::string text = read_text_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "u,v")
    throw io_error("'" + path.string() + "' is not an edge CSV (expected 'u,v' header)");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw io_error("'" + path.string() + "' line " + std::to_string(lineno) +
                     ": expected 'u,v'");
    const auto u = static_cast<std::uint32_t>(std::stoul(line.substr(0, comma)));
    const auto v = static_cast<std::uint32_t>(std::stoul(line.substr(comma + 1)));
    if (u >= n || v >= n)
      throw io_error("'" + path.string() + "' line " + std::to_string(lineno) +
                     ": vertex index out of range");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& list : adj) std::sort(list.begin(), list.end());

  std::optional<std::uint64_t> seed;
  if (side.contains("seed")) seed = side["seed"].get<std::uint64_t>();
  return GeometricGraph::from_parts(
      std::move(adj), side.at("d").get<std::size_t>(), side.at("r").get<double>(),
      Metric::parse(side.at("metric").get<std::string>()),
      side.at("kind").get<std::string>() == "dgg" ? GeometricGraph::Kind::dgg
                                                  : GeometricGraph::Kind::rgg,
      seed);
}

/// Reproducibility record for an experiment run: the resolved config, tool
/// version, stage timings, and a checksum for every emitted file.
struct RunManifest {
  nlohmann::json config;
  std::vector<std::pair<std::string, double>> stage_ms;
  std::vector<std::filesystem::path> outputs;  // paths relative to the manifest
  nlohmann::json extra;                        // distances and other run facts

  void add_stage(std::string name, double ms) { stage_ms.emplace_back(std::move(name), ms); }

  /// Serializes the manifest, checksumming each listed output relative to dir.
  nlohmann::json render(const std::filesystem::path& dir) const {
    nlohmann::json j;
    j["tool_version"] = kVersion;
    j["config"] = config;
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& [name, ms] : stage_ms) {
      nlohmann::json s;
      s["stage"] = name;
      s["wall_ms"] = ms;
      stages.push_back(s);
    }
    j["timings"] = stages;
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& rel : outputs) {
      const auto full = dir / rel;
      const std::string bytes = read_text_file(full);
      nlohmann::json o;
      o["path"] = rel.generic_string();
      o["bytes"] = bytes.size();
      o["fnv1a64"] = to_hex(fnv1a64(bytes));
      outs.push_back(o);
    }
    j["outputs"] = outs;
    if (!extra.is_null()) j["facts"] = extra;
    return j;
  }

  void write(const std::filesystem::path& dir) const {
    write_text_file(dir / "manifest.json", render(dir).dump(2) + "\n");
  }
};

/// Re-reads a manifest and confirms every listed output still matches its
/// recorded checksum; returns the mismatched paths (empty means intact).
inline std::vector<std::string> verify_manifest(const std::filesystem::path& dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(dir / "manifest.json"));
  } catch (const nlohmann::json::parse_error& e) {
    throw io_error("manifest in '" + dir.string() + "' is not valid JSON: " + e.what());
  }
  std::vector<std::string> bad;
  for (const auto& o : j.at("outputs")) {
    const auto rel = o.at("path").get<std::string>();
    const std::string bytes = read_text_file(dir / rel);
    if (to_hex(fnv1a64(bytes)) != o.at("fnv1a64").get<std::string>() ||
        bytes.size() != o.at("bytes").get<std::size_t>())
      bad.push_back(rel);
  }
  return bad;
}

}  // namespace rggspec

#endif  // RGGSPEC_IO_HPP
