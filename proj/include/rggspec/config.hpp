#ifndef RGGSPEC_CONFIG_HPP
#define RGGSPEC_CONFIG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "rggspec/analytic.hpp"
#include "rggspec/common.hpp"
#include "rggspec/geometry.hpp"

namespace rggspec {

/// Degree scaling regime for an experiment run.
enum class Regime { connectivity, thermodynamic, dense };

inline std::string regime_name(Regime r) {
  switch (r) {
    case Regime::connectivity: return "connectivity";
    case Regime::thermodynamic: return "thermodynamic";
    case Regime::dense: return "dense";
  }
  return "?";
}

inline Regime parse_regime(const std::string& s) {
  if (s == "connectivity") return Regime::connectivity;
  if (s == "thermodynamic") return Regime::thermodynamic;
  if (s == "dense") return Regime::dense;
  throw config_error("config field 'regime' must be one of connectivity, thermodynamic, dense; "
                     "got '" + s + "'");
}

/// Validated experiment configuration. Radii are derived per vertex count
/// from the regime's scaling rule, never stored.
struct RegimeConfig {
  Regime regime = Regime::connectivity;
  std::vector<std::size_t> n;
  std::size_t dim = 1;
  Metric metric = Metric::euclidean();
  std::size_t trials = 10;
  std::uint64_t base_seed = 1;
  double tol = 1e-9;
  double alpha = 0.0;            // resolved (regime default applied)
  std::optional<double> c;       // connectivity: a_n = c log(n) style rule
  double gamma = 0.0;            // thermodynamic: constant average degree
  double rho = 0.0;              // dense: a_n = rho n
  std::size_t workers = 1;
  double grid_min = 0.0;
  double grid_max = 2.0;
  std::size_t grid_points = 2001;
  std::size_t analytic_samples = 0;  // 0: match the vertex count
  std::size_t max_order = 8192;      // dense eigensolver cap

  /// Connection radius implied by the regime's scaling rule at vertex
  /// count nv. connectivity: log^{3/2}(nv)/nv, or c log(nv)/(theta^d nv)
  /// when c is set; thermodynamic: gamma/nv for d = 1 and
  /// (gamma/(theta^d nv))^{1/d} otherwise; dense: (rho/theta^d)^{1/d}.
  double radius_for(std::size_t nv) const {
    const double nd = static_cast<double>(nv);
    const double theta = unit_ball_volume(dim, metric);
    switch (regime) {
      case Regime::connectivity:
        if (c) return *c * std::log(nd) / (theta * nd);
        return std::pow(std::log(nd), 1.5) / nd;
      case Regime::thermodynamic:
        if (dim == 1) return gamma / nd;
        return std::pow(gamma / (theta * nd), 1.0 / static_cast<double>(dim));
      case Regime::dense:
        return std::pow(rho / theta, 1.0 / static_cast<double>(dim));
    }
    return 0.0;
  }

  /// Average degree the scaling rule targets: theta^d n r^d (connectivity),
  /// gamma (thermodynamic), rho n (dense).
  double nominal_degree(std::size_t nv) const {
    const double nd = static_cast<double>(nv);
    switch (regime) {
      case Regime::connectivity: {
        const double r = radius_for(nv);
        return unit_ball_volume(dim, metric) * nd * std::pow(r, static_cast<double>(dim));
      }
      case Regime::thermodynamic: return gamma;
      case Regime::dense: return rho * nd;
    }
    return 0.0;
  }

  /// Cubed-distance threshold from the constant-degree concentration bound;
  /// only meaningful in the thermodynamic regime.
  std::optional<double> distance_bound() const {
    if (regime != Regime::thermodynamic) return std::nullopt;
    return thermodynamic_levy_bound(gamma, alpha);
  }

  void validate() const {
    // Field-level ranges first: a bad input should be named directly, not
    // surface as an out-of-range derived radius.
    if (n.empty()) throw config_error("config field 'n' must list at least one vertex count");
    if (dim < 1) throw config_error("config field 'd' must be >= 1");
    if (trials < 1) throw config_error("config field 'trials' must be >= 1");
    if (!(tol > 0.0)) throw config_error("config field 'tol' must be > 0");
    if (alpha < 0.0) throw config_error("config field 'alpha' must be >= 0");
    if (workers < 1) throw config_error("config field 'workers' must be >= 1");
    if (grid_points < 2) throw config_error("config field 'grid_points' must be >= 2");
    if (!(grid_max > grid_min))
      throw config_error("config field 'grid_max' must exceed 'grid_min'");
    if (max_order < 2) throw config_error("config field 'max_order' must be >= 2");
    if (regime == Regime::connectivity && c && !(*c > 0.0))
      throw config_error("config field 'c' must be > 0");
    if (regime == Regime::thermodynamic && !(gamma >= 2.0))
      throw config_error("config field 'gamma' must be >= 2, got " + std::to_string(gamma));
    if (regime == Regime::dense && !(rho > 0.0 && rho <= 1.0))
      throw config_error("config field 'rho' must lie in (0, 1]");
    for (std::size_t nv : n) {
      if (nv < 2)
        throw config_error("config field 'n' entries must be >= 2, got " + std::to_string(nv));
      PointSet::lattice_side(nv, dim);  // n must be a perfect d-th power
      const double r = radius_for(nv);
      if (!(r > 0.0 && r <= 0.5))
        throw config_error("derived radius " + std::to_string(r) + " at n = " +
                           std::to_string(nv) + " falls outside (0, 1/2]");
    }
  }
};

/// Parses and validates a JSON experiment configuration. Unknown keys are
/// rejected by name; omitted optional keys take documented defaults
/// (trials 10, tol 1e-9, alpha 0.001 in the thermodynamic regime and 0
/// elsewhere).
inline RegimeConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw config_error("config must be a JSON object");

  RegimeConfig cfg;
  if (!j.contains("regime") || !j["regime"].is_string())
    throw config_error("config field 'regime' (string) is required");
  cfg.regime = parse_regime(j["regime"].get<std::string>());

  static const std::set<std::string> common = {
      "regime", "n",        "d",        "metric",      "trials",
      "base_seed", "tol",   "alpha",    "workers",     "grid_min",
      "grid_max",  "grid_points", "analytic_samples", "max_order"};
  std::set<std::string> allowed = common;
  if (cfg.regime == Regime::connectivity) allowed.insert("c");
  if (cfg.regime == Regime::thermodynamic) allowed.insert("gamma");
  if (cfg.regime == Regime::dense) allowed.insert("rho");

  std::vector<std::string> unknown;
  for (auto it = j.begin(); it != j.end(); ++it)
    if (allowed.find(it.key()) == allowed.end()) unknown.push_back(it.key());
  if (!unknown.empty()) {
    std::string msg = "unknown config keys:";
    for (const auto& k : unknown) msg += " '" + k + "'";
    msg += " (known keys for regime " + regime_name(cfg.regime) + ":";
    for (const auto& k : allowed) msg += " " + k;
    msg += ")";
    throw config_error(msg);
  }

  auto require_number = [&](const char* key) {
    if (!j[key].is_number())
      throw config_error(std::string("config field '") + key + "' must be a number");
    return j[key].get<double>();
  };
  auto opt_size = [&](const char* key, std::size_t dflt) -> std::size_t {
    if (!j.contains(key)) return dflt;
    if (!j[key].is_number_integer() && !j[key].is_number_unsigned())
      throw config_error(std::string("config field '") + key + "' must be an integer");
    const auto v = j[key].get<std::int64_t>();
    if (v < 0) throw config_error(std::string("config field '") + key + "' must be >= 0");
    return static_cast<std::size_t>(v);
  };

  if (!j.contains("n") || !j["n"].is_array())
    throw config_error("config field 'n' (array of vertex counts) is required");
  for (const auto& e : j["n"]) {
    if (!e.is_number_integer() && !e.is_number_unsigned())
      throw config_error("config field 'n' entries must be integers");
    const auto v = e.get<std::int64_t>();
    if (v < 0) throw config_error("config field 'n' entries must be positive");
    cfg.n.push_back(static_cast<std::size_t>(v));
  }

  cfg.dim = opt_size("d", 1);
  if (j.contains("metric")) {
    if (!j["metric"].is_string()) throw config_error("config field 'metric' must be a string");
    cfg.metric = Metric::parse(j["metric"].get<std::string>());
  }
  cfg.trials = opt_size("trials", 10);
  if (j.contains("base_seed")) {
    if (!j["base_seed"].is_number_integer() && !j["base_seed"].is_number_unsigned())
      throw config_error("config field 'base_seed' must be an integer");
    cfg.base_seed = j["base_seed"].get<std::uint64_t>();
  }
  cfg.tol = j.contains("tol") ? require_number("tol") : 1e-9;
  cfg.alpha = j.contains("alpha")
                  ? require_number("alpha")
                  : (cfg.regime == Regime::thermodynamic ? 0.001 : 0.0);
  if (j.contains("c")) cfg.c = require_number("c");
  if (cfg.regime == Regime::thermodynamic) {
    if (!j.contains("gamma"))
      throw config_error("config field 'gamma' is required in the thermodynamic regime");
    cfg.gamma = require_number("gamma");
  }
  if (cfg.regime == Regime::dense) {
    if (!j.contains("rho"))
      throw config_error("config field 'rho' is required in the dense regime");
    cfg.rho = require_number("rho");
  }
  cfg.workers = opt_size("workers", 1);
  cfg.grid_min = j.contains("grid_min") ? require_number("grid_min") : 0.0;
  cfg.grid_max = j.contains("grid_max") ? require_number("grid_max") : 2.0;
  cfg.grid_points = opt_size("grid_points", 2001);
  cfg.analytic_samples = opt_size("analytic_samples", 0);
  cfg.max_order = opt_size("max_order", 8192);

  cfg.validate();
  return cfg;
}

/// Full echo of a resolved configuration, including the derived radius and
/// target degree for every vertex count. Keys come out sorted, so the echo
/// is byte-stable for a given config.
inline nlohmann::json config_echo(const RegimeConfig& cfg) {
  nlohmann::json j;
  j["regime"] = regime_name(cfg.regime);
  j["n"] = cfg.n;
  j["d"] = cfg.dim;
  j["metric"] = cfg.metric.name();
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  j["tol"] = cfg.tol;
  j["alpha"] = cfg.alpha;
  if (cfg.c) j["c"] = *cfg.c;
  if (cfg.regime == Regime::thermodynamic) j["gamma"] = cfg.gamma;
  if (cfg.regime == Regime::dense) j["rho"] = cfg.rho;
  j["workers"] = cfg.workers;
  j["grid_min"] = cfg.grid_min;
  j["grid_max"] = cfg.grid_max;
  j["grid_points"] = cfg.grid_points;
  j["analytic_samples"] = cfg.analytic_samples;
  j["max_order"] = cfg.max_order;
  nlohmann::json derived = nlohmann::json::array();
  for (std::size_t nv : cfg.n) {
    nlohmann::json row;
    row["n"] = nv;
    row["radius"] = cfg.radius_for(nv);
    row["nominal_degree"] = cfg.nominal_degree(nv);
    derived.push_back(row);
  }
  j["derived"] = derived;
  if (auto b = cfg.distance_bound()) j["distance_bound"] = *b;
  return j;
}

}  // namespace rggspec

#endif  // RGGSPEC_CONFIG_HPP
