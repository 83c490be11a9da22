#ifndef RGGSPEC_EXPERIMENTS_HPP
#define RGGSPEC_EXPERIMENTS_HPP

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rggspec/analytic.hpp"
#include "rggspec/config.hpp"
#include "rggspec/graphs.hpp"
#include "rggspec/io.hpp"
#include "rggspec/laplacian.hpp"
#include "rggspec/metrics.hpp"
#include "rggspec/spectra.hpp"

namespace rggspec {

/// Outcome of one random-vs-grid spectral comparison. A trial is
/// `singular` when alpha = 0 and a graph has an isolated vertex: the
/// operator does not exist there, and the event itself is the datum.
struct TrialResult {
  enum class Status { ok, singular };

  std::size_t n = 0;
  std::size_t dim = 1;
  double r = 0.0;
  std::uint64_t seed = 0;
  Status status = Status::ok;
  double avg_degree = 0.0;   // realized average degree of the random graph
  double grid_degree = 0.0;  // degree of the (regular) grid graph
  DistanceReport dist;       // valid only when status == ok
  std::optional<double> bound;  // thermodynamic threshold, when applicable
  bool degree_condition = false;
  double wall_ms = 0.0;  // informational; deliberately kept out of trials.csv
};

namespace detail {

inline double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

/// Per-vertex-count state shared by all trials: the grid graph is
/// deterministic, so its spectrum is computed once.
struct TrialContext {
  std::size_t n = 0;
  double r = 0.0;
  double grid_degree = 0.0;
  bool grid_ok = false;
  SpectralDistribution grid_esd;
};

inline TrialContext make_trial_context(const RegimeConfig& cfg, std::size_t nv) {
  TrialContext ctx;
  ctx.n = nv;
  ctx.r = cfg.radius_for(nv);
  const GeometricGraph grid = build_dgg(nv, cfg.dim, ctx.r, cfg.metric);
  ctx.grid_degree = grid.average_degree();
  ctx.grid_ok = cfg.alpha > 0.0 || grid.degree(0) > 0;
  if (ctx.grid_ok) {
    DenseEigenOptions opt;
    opt.max_order = cfg.max_order;
    if (cfg.dim == 1)
      ctx.grid_esd = eigenvalues_circulant(assemble_laplacian_circulant(grid, cfg.alpha),
                                           "grid n=" + std::to_string(nv));
    else
      ctx.grid_esd = eigenvalues_dense(assemble_laplacian(grid, cfg.alpha), opt,
                                       "grid n=" + std::to_string(nv));
  }
  return ctx;
}

inline TrialResult run_trial_in_context(const RegimeConfig& cfg, const TrialContext& ctx,
                                        std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialResult res;
  res.n = ctx.n;
  res.dim = cfg.dim;
  res.r = ctx.r;
  res.seed = seed;
  res.grid_degree = ctx.grid_degree;
  res.bound = cfg.distance_bound();
  res.degree_condition = degree_condition_ok(cfg.nominal_degree(ctx.n), cfg.dim);

  const GeometricGraph rgg = sample_rgg(ctx.n, cfg.dim, ctx.r, seed, cfg.metric);
  res.avg_degree = rgg.average_degree();

  bool isolated = false;
  if (cfg.alpha == 0.0)
    for (std::size_t i = 0; i < rgg.size() && !isolated; ++i)
      if (rgg.degree(i) == 0) isolated = true;

  if (isolated || !ctx.grid_ok) {
    res.status = TrialResult::Status::singular;
    res.wall_ms = ms_since(t0);
    return res;
  }

  DenseEigenOptions opt;
  opt.max_order = cfg.max_order;
  const SpectralDistribution rgg_esd =
      eigenvalues_dense(assemble_laplacian(rgg, cfg.alpha), opt,
                        "rgg n=" + std::to_string(ctx.n) + " seed=" + std::to_string(seed));
  res.dist = measure_distances(rgg_esd, ctx.grid_esd, cfg.tol);
  res.status = TrialResult::Status::ok;
  res.wall_ms = ms_since(t0);
  return res;
}

}  // namespace detail

/// One seeded comparison trial at vertex count nv: samples the random
/// graph, builds the matching grid graph, and measures the distance
/// between their spectral distributions.
inline TrialResult run_trial(const RegimeConfig& cfg, std::size_t nv, std::uint64_t seed) {
  return detail::run_trial_in_context(cfg, detail::make_trial_context(cfg, nv), seed);
}

/// Aggregates over the trials at one vertex count. Distance moments are
/// over ok trials only; std is the population standard deviation.
struct SweepSummary {
  std::size_t n = 0;
  double r = 0.0;
  std::size_t trials = 0;
  std::size_t ok = 0;
  std::size_t singular = 0;
  double mean_levy = 0.0;
  double mean_ks = 0.0;
  double mean_levy_cubed = 0.0;
  double std_levy_cubed = 0.0;
  double mean_avg_degree = 0.0;
  double grid_degree = 0.0;
  std::optional<double> bound;
  std::optional<double> frac_within_bound;
};

struct SweepResult {
  std::vector<TrialResult> trials;  // ordered by (n index, trial index)
  std::vector<SweepSummary> summaries;
  std::vector<std::pair<std::string, double>> stage_ms;
};

/// Runs cfg.trials seeded trials per vertex count. Trial seeds are
/// base_seed + n_index * trials + trial_index; workers only change the
/// schedule, never the results, which land in seed order.
inline SweepResult run_sweep(const RegimeConfig& cfg) {
  SweepResult out;
  std::vector<detail::TrialContext> contexts;
  contexts.reserve(cfg.n.size());
  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni) {
    const auto t0 = std::chrono::steady_clock::now();
    contexts.push_back(detail::make_trial_context(cfg, cfg.n[ni]));
    out.stage_ms.emplace_back("grid_spectrum_n" + std::to_string(cfg.n[ni]),
                              detail::ms_since(t0));
  }

  const std::size_t total = cfg.n.size() * cfg.trials;
  out.trials.resize(total);
  const auto t0 = std::chrono::steady_clock::now();

  auto job = [&](std::size_t flat) {
    const std::size_t ni = flat / cfg.trials;
    const std::size_t ti = flat % cfg.trials;
    const std::uint64_t seed =
        cfg.base_seed + static_cast<std::uint64_t>(ni) * cfg.trials + ti;
    out.trials[flat] = detail::run_trial_in_context(cfg, contexts[ni], seed);
  };

  const std::size_t workers = std::min(cfg.workers, total);
  if (workers <= 1) {
    for (std::size_t flat = 0; flat < total; ++flat) job(flat);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t flat = next.fetch_add(1);
          if (flat >= total) break;
          job(flat);
        }
      });
    for (auto& th : pool) th.join();
  }
  out.stage_ms.emplace_back("trials", detail::ms_since(t0));

  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni) {
    SweepSummary s;
    s.n = cfg.n[ni];
    s.r = contexts[ni].r;
    s.trials = cfg.trials;
    s.grid_degree = contexts[ni].grid_degree;
    s.bound = cfg.distance_bound();
    double sum_l3 = 0.0, sum_l3_sq = 0.0;
    std::size_t within = 0;
    for (std::size_t ti = 0; ti < cfg.trials; ++ti) {
      const TrialResult& t = out.trials[ni * cfg.trials + ti];
      s.mean_avg_degree += t.avg_degree;
      if (t.status == TrialResult::Status::ok) {
        ++s.ok;
        s.mean_levy += t.dist.levy;
        s.mean_ks += t.dist.ks;
        sum_l3 += t.dist.levy_cubed;
        sum_l3_sq += t.dist.levy_cubed * t.dist.levy_cubed;
        if (s.bound && t.dist.levy_cubed <= *s.bound) ++within;
      } else {
        ++s.singular;
      }
    }
    s.mean_avg_degree /= static_cast<double>(cfg.trials);
    if (s.ok > 0) {
      const auto okd = static_cast<double>(s.ok);
      s.mean_levy /= okd;
      s.mean_ks /= okd;
      s.mean_levy_cubed = sum_l3 / okd;
      const double var = std::max(0.0, sum_l3_sq / okd - s.mean_levy_cubed * s.mean_levy_cubed);
      s.std_levy_cubed = std::sqrt(var);
      if (s.bound) s.frac_within_bound = static_cast<double>(within) / okd;
    }
    out.summaries.push_back(s);
  }
  return out;
}

inline const char* trial_status_name(TrialResult::Status s) {
  return s == TrialResult::Status::ok ? "ok" : "singular";
}

/// trials.csv body: one row per trial, stable column set, 17-significant-
/// digit floats, empty cells where a value does not apply. Byte-identical
/// across reruns of the same config (wall times intentionally omitted).
inline std::string trials_csv(const std::vector<TrialResult>& trials) {
  std::string out =
      "n,d,r,seed,status,avg_degree,grid_degree,levy,levy_cubed,ks,bound,"
      "degree_condition_ok\n";
  for (const TrialResult& t : trials) {
    out += std::to_string(t.n) + "," + std::to_string(t.dim) + "," + format_double(t.r) + "," +
           std::to_string(t.seed) + "," + trial_status_name(t.status) + "," +
           format_double(t.avg_degree) + "," + format_double(t.grid_degree) + ",";
    if (t.status == TrialResult::Status::ok)
      out += format_double(t.dist.levy) + "," + format_double(t.dist.levy_cubed) + "," +
             format_double(t.dist.ks);
    else
      out += ",,";
    out += ",";
    if (t.bound) out += format_double(*t.bound);
    out += ",";
    out += t.degree_condition ? "1" : "0";
    out += "\n";
  }
  return out;
}

inline nlohmann::json summary_json(const std::vector<SweepSummary>& summaries) {
  nlohmann::json arr = nlohmann::json::array();
  for (const SweepSummary& s : summaries) {
    nlohmann::json j;
    j["n"] = s.n;
    j["r"] = s.r;
    j["trials"] = s.trials;
    j["ok"] = s.ok;
    j["singular"] = s.singular;
    j["mean_levy"] = s.mean_levy;
    j["mean_ks"] = s.mean_ks;
    j["mean_levy_cubed"] = s.mean_levy_cubed;
    j["std_levy_cubed"] = s.std_levy_cubed;
    j["mean_avg_degree"] = s.mean_avg_degree;
    j["grid_degree"] = s.grid_degree;
    if (s.bound) j["bound"] = *s.bound;
    if (s.frac_within_bound) j["frac_within_bound"] = *s.frac_within_bound;
    arr.push_back(j);
  }
  return arr;
}

/// Sweep experiment: trials.csv, summary.json, and manifest.json in out_dir.
inline SweepResult run_sweep_experiment(const RegimeConfig& cfg,
                                        const std::filesystem::path& out_dir) {
  SweepResult sweep = run_sweep(cfg);
  write_text_file(out_dir / "trials.csv", trials_csv(sweep.trials));
  write_text_file(out_dir / "summary.json", summary_json(sweep.summaries).dump(2) + "\n");

  RunManifest manifest;
  manifest.config = config_echo(cfg);
  manifest.stage_ms = sweep.stage_ms;
  manifest.outputs = {"trials.csv", "summary.json"};
  manifest.write(out_dir);
  return sweep;
}

/// Curve experiment: everything the sweep emits, plus per-n CDF curves
/// under curves/ — the random-graph spectrum, the grid spectrum, and (in
/// the thermodynamic regime) the closed-form limit law — with the
/// curve-to-curve distances recorded in the manifest.
inline SweepResult run_curves_experiment(const RegimeConfig& cfg,
                                         const std::filesystem::path& out_dir) {
  SweepResult sweep = run_sweep(cfg);
  write_text_file(out_dir / "trials.csv", trials_csv(sweep.trials));
  write_text_file(out_dir / "summary.json", summary_json(sweep.summaries).dump(2) + "\n");

  RunManifest manifest;
  manifest.config = config_echo(cfg);
  manifest.stage_ms = sweep.stage_ms;
  manifest.outputs = {"trials.csv", "summary.json"};

  const std::vector<double> grid = make_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points);
  nlohmann::json facts = nlohmann::json::array();

  for (std::size_t ni = 0; ni < cfg.n.size(); ++ni) {
    const std::size_t nv = cfg.n[ni];
    const double r = cfg.radius_for(nv);
    const auto t0 = std::chrono::steady_clock::now();

    // Representative random-graph spectrum: the first non-singular trial.
    std::optional<std::uint64_t> rep_seed;
    for (std::size_t ti = 0; ti < cfg.trials && !rep_seed; ++ti)
      if (sweep.trials[ni * cfg.trials + ti].status == TrialResult::Status::ok)
        rep_seed = sweep.trials[ni * cfg.trials + ti].seed;
    if (!rep_seed)
      throw numeric_error("every trial at n = " + std::to_string(nv) +
                          " was singular; no representative spectrum to plot (use alpha > 0)");

    DenseEigenOptions opt;
    opt.max_order = cfg.max_order;
    const GeometricGraph rgg = sample_rgg(nv, cfg.dim, r, *rep_seed, cfg.metric);
    const SpectralDistribution rgg_esd =
        eigenvalues_dense(assemble_laplacian(rgg, cfg.alpha), opt, "rgg");

    const GeometricGraph dgg = build_dgg(nv, cfg.dim, r, cfg.metric);
    const SpectralDistribution dgg_esd =
        cfg.dim == 1
            ? eigenvalues_circulant(assemble_laplacian_circulant(dgg, cfg.alpha), "dgg")
            : eigenvalues_dense(assemble_laplacian(dgg, cfg.alpha), opt, "dgg");

    const std::string suffix = "_n" + std::to_string(nv) + ".csv";
    const std::filesystem::path rgg_rel = std::filesystem::path("curves") / ("rgg" + suffix);
    const std::filesystem::path dgg_rel = std::filesystem::path("curves") / ("dgg" + suffix);
    write_cdf_csv(rgg_esd, grid, out_dir / rgg_rel);
    write_cdf_csv(dgg_esd, grid, out_dir / dgg_rel);
    manifest.outputs.push_back(rgg_rel);
    manifest.outputs.push_back(dgg_rel);

    nlohmann::json f;
    f["n"] = nv;
    f["representative_seed"] = *rep_seed;
    f["ks_rgg_dgg"] = ks_distance(rgg_esd, dgg_esd);

    if (cfg.regime == Regime::thermodynamic) {
      const std::size_t samples = cfg.analytic_samples ? cfg.analytic_samples : nv;
      const SpectralDistribution analytic =
          thermodynamic_spectrum(samples, cfg.gamma, cfg.alpha, "analytic");
      const std::filesystem::path ana_rel =
          std::filesystem::path("curves") / ("analytic" + suffix);
      write_cdf_csv(analytic, grid, out_dir / ana_rel);
      manifest.outputs.push_back(ana_rel);
      f["analytic_samples"] = samples;
      f["ks_dgg_analytic"] = ks_distance(dgg_esd, analytic);
      f["ks_rgg_analytic"] = ks_distance(rgg_esd, analytic);
    }
    facts.push_back(f);
    manifest.add_stage("curves_n" + std::to_string(nv), detail::ms_since(t0));
  }

  manifest.extra = nlohmann::json{{"curves", facts}};
  manifest.write(out_dir);
  return sweep;
}

}  // namespace rggspec

#endif  // RGGSPEC_EXPERIMENTS_HPP
