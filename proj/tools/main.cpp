// Command-line surface for the library: graph construction, spectra,
// closed-form eigenvalue laws, spectral distances, and seeded experiments.
// Exit codes: 0 success, 2 configuration error, 3 numeric error, 4 I/O error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rggspec/rggspec.hpp"

namespace {

using namespace rggspec;

struct GraphArgs {
  std::size_t n = 0;
  std::size_t d = 1;
  double r = 0.0;
  std::string metric = "euclidean";
  std::uint64_t seed = 0;
  std::string out;
};

struct SpectrumArgs {
  std::string graph_path;
  std::string kind;
  std::size_t n = 0;
  std::size_t d = 1;
  double r = 0.0;
  std::string metric = "euclidean";
  std::uint64_t seed = 0;
  bool seed_given = false;
  double alpha = 0.0;
  std::size_t max_order = 8192;
  bool verify = false;
  std::string out;
};

struct AnalyticArgs {
  std::size_t n = 0;
  double r = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
  std::size_t samples = 0;
  std::string out;
  std::string cdf_out;
  double grid_min = 0.0;
  double grid_max = 2.0;
  std::size_t grid_points = 2001;
};

struct DistanceArgs {
  std::string a, b;
  double tol = 1e-9;
};

struct ExperimentArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::size_t> workers;
};

void emit_spectrum(const SpectrumArgs& sa) {
  SpectralDistribution esd;
  if (!sa.graph_path.empty()) {
    const GeometricGraph g = read_edges_csv(sa.graph_path);
    DenseEigenOptions opt;
    opt.max_order = sa.max_order;
    opt.verify = sa.verify;
    if (g.kind() == GeometricGraph::Kind::dgg && g.dim() == 1)
      esd = eigenvalues_circulant(assemble_laplacian_circulant(g, sa.alpha));
    else
      esd = eigenvalues_dense(assemble_laplacian(g, sa.alpha), opt);
  } else {
    if (sa.kind != "rgg" && sa.kind != "dgg")
      throw config_error("--kind must be rgg or dgg when no --graph file is given");
    const Metric metric = Metric::parse(sa.metric);
    DenseEigenOptions opt;
    opt.max_order = sa.max_order;
    opt.verify = sa.verify;
    if (sa.kind == "dgg") {
      const GeometricGraph g = build_dgg(sa.n, sa.d, sa.r, metric);
      if (g.dim() == 1)
        esd = eigenvalues_circulant(assemble_laplacian_circulant(g, sa.alpha));
      else
        esd = eigenvalues_dense(assemble_laplacian(g, sa.alpha), opt);
    } else {
      if (!sa.seed_given) throw config_error("--seed is required for a random graph");
      const GeometricGraph g = sample_rgg(sa.n, sa.d, sa.r, sa.seed, metric);
      esd = eigenvalues_dense(assemble_laplacian(g, sa.alpha), opt);
    }
  }
  write_eigenvalue_csv(esd, sa.out);
  std::printf("wrote %zu eigenvalues to %s (min %.6g, max %.6g)\n", esd.size(), sa.out.c_str(),
              esd.min(), esd.max());
}

void print_sweep_lines(const SweepResult& sweep) {
  for (const SweepSummary& s : sweep.summaries) {
    std::printf("n=%zu r=%.6g ok=%zu singular=%zu mean_levy_cubed=%.6g mean_ks=%.6g",
                s.n, s.r, s.ok, s.singular, s.mean_levy_cubed, s.mean_ks);
    if (s.bound && s.frac_within_bound)
      std::printf(" bound=%.6g frac_within_bound=%.3g", *s.bound, *s.frac_within_bound);
    std::printf("\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Geometric graph spectra on the unit torus: graph builders, dense and "
      "circulant eigensolvers, closed-form eigenvalue laws, spectral distances, "
      "and seeded experiments."};
  app.set_version_flag("--version", std::string(rggspec::kVersion));
  app.require_subcommand(1);

  GraphArgs ga;
  auto* graph = app.add_subcommand("graph", "Build a graph; write edge CSV + JSON sidecar");
  graph->require_subcommand(1);
  auto add_graph_common = [&ga](CLI::App* sc) {
    sc->add_option("--n", ga.n, "vertex count")->required();
    sc->add_option("--d", ga.d, "dimension")->capture_default_str();
    sc->add_option("--r", ga.r, "connection radius in torus units")->required();
    sc->add_option("--metric", ga.metric, "euclidean | chebyshev | lp:<p>")
        ->capture_default_str();
    sc->add_option("--out", ga.out, "output edge CSV path")->required();
  };
  auto* g_rgg = graph->add_subcommand("rgg", "uniform random points");
  add_graph_common(g_rgg);
  g_rgg->add_option("--seed", ga.seed, "RNG seed")->required();
  auto* g_dgg = graph->add_subcommand("dgg", "regular lattice points (n must be a d-th power)");
  add_graph_common(g_dgg);

  SpectrumArgs sa;
  auto* spectrum =
      app.add_subcommand("spectrum", "Full spectrum of the regularized operator of a graph");
  spectrum->add_option("--graph", sa.graph_path,
                       "edge CSV written by `graph` (sidecar required)");
  spectrum->add_option("--kind", sa.kind, "rgg | dgg (inline construction)");
  spectrum->add_option("--n", sa.n, "vertex count (inline)");
  spectrum->add_option("--d", sa.d, "dimension (inline)")->capture_default_str();
  spectrum->add_option("--r", sa.r, "connection radius (inline)");
  spectrum->add_option("--metric", sa.metric, "metric (inline)")->capture_default_str();
  spectrum->add_option("--seed", sa.seed, "RNG seed (inline rgg)")
      ->each([&sa](const std::string&) { sa.seed_given = true; });
  spectrum->add_option("--alpha", sa.alpha, "regularizer")->capture_default_str();
  spectrum->add_option("--max-order", sa.max_order, "dense eigensolve size cap")
      ->capture_default_str();
  spectrum->add_flag("--verify", sa.verify, "recompute eigenvectors and check residuals");
  spectrum->add_option("--out", sa.out, "output eigenvalue CSV")->required();

  AnalyticArgs aa;
  auto* analytic = app.add_subcommand("analytic", "Closed-form eigenvalue laws");
  analytic->require_subcommand(1);
  auto* a_grid = analytic->add_subcommand(
      "grid", "exact spectrum of the 1-d lattice operator at finite n");
  a_grid->add_option("--n", aa.n, "vertex count")->required();
  a_grid->add_option("--r", aa.r, "connection radius")->required();
  a_grid->add_option("--alpha", aa.alpha, "regularizer")->capture_default_str();
  a_grid->add_option("--out", aa.out, "output eigenvalue CSV")->required();
  a_grid->add_option("--cdf", aa.cdf_out, "also write the CDF sampled on a grid");
  auto* a_thermo = analytic->add_subcommand(
      "thermodynamic", "limiting eigenvalue law at constant average degree");
  a_thermo->add_option("--gamma", aa.gamma, "average degree (>= 2)")->required();
  a_thermo->add_option("--alpha", aa.alpha, "regularizer")->capture_default_str();
  a_thermo->add_option("--samples", aa.samples, "number of spectral parameter samples")
      ->required();
  a_thermo->add_option("--out", aa.out, "output eigenvalue CSV")->required();
  a_thermo->add_option("--cdf", aa.cdf_out, "also write the CDF sampled on a grid");
  for (auto* sc : {a_grid, a_thermo}) {
    sc->add_option("--grid-min", aa.grid_min, "CDF grid lower bound")->capture_default_str();
    sc->add_option("--grid-max", aa.grid_max, "CDF grid upper bound")->capture_default_str();
    sc->add_option("--grid-points", aa.grid_points, "CDF grid point count")
        ->capture_default_str();
  }

  DistanceArgs da;
  auto* distance =
      app.add_subcommand("distance", "Distances between two spectra (JSON to stdout)");
  distance->add_option("--a", da.a, "first eigenvalue CSV")->required();
  distance->add_option("--b", da.b, "second eigenvalue CSV")->required();
  distance->add_option("--tol", da.tol, "bisection stopping width")->capture_default_str();

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Seeded Monte Carlo experiments");
  experiment->require_subcommand(1);
  auto* e_curves = experiment->add_subcommand(
      "curves", "sweep plus per-n CDF curves (random, grid, and closed-form)");
  auto* e_sweep = experiment->add_subcommand("sweep", "seeded trials and summary only");
  for (auto* sc : {e_curves, e_sweep}) {
    sc->add_option("--config", ea.config_path, "JSON config file")->required();
    sc->add_option("--out-dir", ea.out_dir, "output directory")->required();
    sc->add_option("--workers", ea.workers, "override the config's worker count");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (g_rgg->parsed()) {
      const GeometricGraph g =
          sample_rgg(ga.n, ga.d, ga.r, ga.seed, Metric::parse(ga.metric));
      write_edges_csv(g, ga.out);
      std::printf("wrote %zu edges to %s (average degree %.6g)\n", g.edge_count(),
                  ga.out.c_str(), g.average_degree());
    } else if (g_dgg->parsed()) {
      const GeometricGraph g = build_dgg(ga.n, ga.d, ga.r, Metric::parse(ga.metric));
      write_edges_csv(g, ga.out);
      std::printf("wrote %zu edges to %s (degree %.6g)\n", g.edge_count(), ga.out.c_str(),
                  g.average_degree());
    } else if (spectrum->parsed()) {
      emit_spectrum(sa);
    } else if (a_grid->parsed()) {
      const SpectralDistribution esd = grid_spectrum_1d(aa.n, aa.r, aa.alpha);
      write_eigenvalue_csv(esd, aa.out);
      if (!aa.cdf_out.empty())
        write_cdf_csv(esd, make_grid(aa.grid_min, aa.grid_max, aa.grid_points), aa.cdf_out);
      std::printf("wrote %zu eigenvalues to %s\n", esd.size(), aa.out.c_str());
    } else if (a_thermo->parsed()) {
      const SpectralDistribution esd = thermodynamic_spectrum(aa.samples, aa.gamma, aa.alpha);
      write_eigenvalue_csv(esd, aa.out);
      if (!aa.cdf_out.empty())
        write_cdf_csv(esd, make_grid(aa.grid_min, aa.grid_max, aa.grid_points), aa.cdf_out);
      std::printf("wrote %zu eigenvalues to %s\n", esd.size(), aa.out.c_str());
    } else if (distance->parsed()) {
      const SpectralDistribution a = read_eigenvalue_csv(da.a);
      const SpectralDistribution b = read_eigenvalue_csv(da.b);
      const DistanceReport rep = measure_distances(a, b, da.tol);
      nlohmann::json j;
      j["levy"] = rep.levy;
      j["levy_cubed"] = rep.levy_cubed;
      j["ks"] = rep.ks;
      j["tolerance"] = rep.tolerance;
      std::printf("%s\n", j.dump().c_str());
    } else if (e_curves->parsed() || e_sweep->parsed()) {
      RegimeConfig cfg = parse_config(read_text_file(ea.config_path));
      if (ea.workers) {
        cfg.workers = *ea.workers;
        if (cfg.workers < 1) throw config_error("--workers must be >= 1");
      }
      const SweepResult sweep = e_curves->parsed()
                                    ? run_curves_experiment(cfg, ea.out_dir)
                                    : run_sweep_experiment(cfg, ea.out_dir);
      print_sweep_lines(sweep);
      std::printf("outputs in %s\n", ea.out_dir.c_str());
    }
  } catch (const rggspec::config_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const rggspec::numeric_error& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const rggspec::io_error& e) {
    std::fprintf(stderr, "io error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
