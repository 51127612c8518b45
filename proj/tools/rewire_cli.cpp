// Experiment runner: reproduces the evaluation data (traces, fit tables,
// TVD sweeps, walk-length scans, bound reports) from declarative manifests.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "rewire/analysis.hpp"
#include "rewire/bounds.hpp"
#include "rewire/edgelist.hpp"
#include "rewire/generators.hpp"
#include "rewire/manifest.hpp"
#include "rewire/plot.hpp"
#include "rewire/protocol.hpp"
#include "rewire/walk.hpp"

namespace fs = std::filesystem;
using namespace rewire;

namespace {

constexpr int kExitManifest = 2;
constexpr int kExitGuard = 3;

struct GlobalOpts {
  std::string manifest_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<long> reps;
  bool force = false;
};

std::ofstream open_output(const GlobalOpts& g, const Manifest& m,
                          std::uint64_t seed, const std::string& name) {
  fs::create_directories(g.out_dir);
  fs::path path = fs::path(g.out_dir) / name;
  if (fs::exists(path) && !g.force)
    throw ManifestError("output exists (use --force to overwrite): " +
                        path.string());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output: " + path.string());
  out << std::setprecision(12);
  out << "# manifest_hash=0x" << std::hex << m.hash() << std::dec << "\n";
  out << "# seed=" << seed << "\n";
  return out;
}

// n_override: for sweeps that carry their own size list ("n" not required).
GenSpec gen_spec_from(const Manifest& m, std::uint64_t seed,
                      int n_override = 0) {
  GenSpec spec;
  std::string model = m.get_string("model");
  if (model == "BA") {
    spec.model = GenModel::BA;
    spec.m_target = static_cast<int>(m.get_int("m_per_node"));
  } else if (model == "ER") {
    spec.model = GenModel::ER;
    spec.m_target = static_cast<int>(m.get_int("m"));
  } else {
    throw ManifestError("manifest: field 'model' must be BA or ER, got '" +
                        model + "'");
  }
  spec.n = n_override > 0 ? n_override : static_cast<int>(m.get_int("n"));
  spec.seed = seed;
  spec.permute_ids = m.get_int("permute_ids", 0) != 0;
  return spec;
}

std::uint64_t pick_seed(const GlobalOpts& g, const Manifest& m) {
  if (g.seed) return *g.seed;
  return static_cast<std::uint64_t>(m.get_int("seed", 1));
}

long pick_reps(const GlobalOpts& g, const Manifest& m, long dflt = 1) {
  long reps = g.reps ? *g.reps : m.get_int("reps", dflt);
  if (reps < 1) throw ManifestError("manifest: reps must be >= 1");
  return reps;
}

long auto_sample_count(const Manifest& m, const TargetSpec& spec) {
  long R = m.get_int("R", 0);
  if (R > 0) return R;
  // Enough that minimum-probability nodes are hit reasonably often.
  return std::max(1000000L,
                  static_cast<long>(std::ceil(25.0 / spec.pi_min())));
}

// "start" key: "uniform" (default), "worst" (least-likely node n), or a
// 1-based node ID.
StartPolicy start_policy_from(const Manifest& m, int n) {
  std::string s = m.get_string("start", "uniform");
  if (s == "uniform") return StartPolicy::Uniform();
  if (s == "worst") return StartPolicy::Fixed(n);
  try {
    long v = std::stol(s);
    if (v >= 1 && v <= n) return StartPolicy::Fixed(static_cast<NodeId>(v));
  } catch (const std::exception&) {
  }
  throw ManifestError(
      "manifest: field 'start' must be uniform, worst, or a node ID in "
      "[1,n], got '" +
      s + "'");
}

void cmd_generate(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  GenSpec spec = gen_spec_from(m, seed);
  Graph graph = generate(spec);
  fs::create_directories(g.out_dir);
  fs::path path = fs::path(g.out_dir) / "graph.edgelist";
  if (fs::exists(path) && !g.force)
    throw ManifestError("output exists (use --force to overwrite): " +
                        path.string());
  save_edge_list(graph, path.string());
  std::ofstream meta(path.string() + ".meta");
  meta << spec.meta() << "m_actual=" << graph.edge_count() << "\n";
  std::cout << "wrote " << path.string() << " (n=" << graph.node_count()
            << " m=" << graph.edge_count() << ")\n";
}

SimConfig sim_config_from(const Manifest& m, double gamma) {
  SimConfig c;
  c.gamma = gamma;
  c.l = static_cast<int>(m.get_int("l"));
  c.delay = m.get_double("delay", 0.0);
  c.snapshot_every = m.get_double("snapshot_every", 200.0);
  c.max_time = m.get_double("max_time", 0.0);
  c.validate();
  return c;
}

void write_trace(std::ofstream& out, const std::vector<TraceRecord>& trace,
                 int cycle = -1) {
  for (const auto& rec : trace) {
    if (cycle >= 0) out << cycle << ",";
    out << rec.csv_row() << "\n";
  }
}

void cmd_rewire(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  long reps = pick_reps(g, m, 5);
  auto gammas = m.get_double_list("gammas");

  auto fit_out = open_output(g, m, seed, "fit_table.csv");
  fit_out << "gamma_t,gamma_f,ks_D,dmin\n";
  for (double gamma : gammas) {
    SimConfig config = sim_config_from(m, gamma);
    double sum_gf = 0, sum_ks = 0, sum_dmin = 0;
    for (long rep = 0; rep < reps; ++rep) {
      std::uint64_t run_seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(
                                          rep * 1000 + gamma * 10)));
      GenSpec gs = gen_spec_from(m, run_seed);
      Simulator sim(generate(gs), run_seed);
      CycleResult res = sim.run_cycle(config);
      std::ostringstream name;
      name << "trace_g" << gamma << "_rep" << rep << ".csv";
      auto trace_out = open_output(g, m, run_seed, name.str());
      trace_out << TraceRecord::csv_header() << "\n";
      write_trace(trace_out, res.trace);
      std::ostringstream gname;
      gname << "final_g" << gamma << "_rep" << rep << ".edgelist";
      save_edge_list(sim.graph(),
                     (fs::path(g.out_dir) / gname.str()).string());
      const auto& last = res.trace.back();
      sum_gf += last.gamma_f;
      sum_ks += last.ks_D;
      sum_dmin += last.d_min_fit;
      if (!res.completed)
        std::cerr << "note: gamma=" << gamma << " rep=" << rep
                  << " hit max_time with rewired_frac="
                  << last.rewired_fraction << "\n";
    }
    fit_out << gamma << "," << sum_gf / reps << "," << sum_ks / reps << ","
            << sum_dmin / reps << "\n";
    std::cout << "gamma_t=" << gamma << " gamma_f=" << sum_gf / reps
              << " ks_D=" << sum_ks / reps << " dmin=" << sum_dmin / reps
              << "\n";
  }
}

void cmd_multi_cycle(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  auto gammas = m.get_double_list("gammas");
  if (gammas.empty()) {
    std::cerr << "warning: empty cycle list, nothing to do\n";
    return;
  }
  std::vector<SimConfig> configs;
  for (double gamma : gammas) configs.push_back(sim_config_from(m, gamma));
  GenSpec gs = gen_spec_from(m, seed);
  Simulator sim(generate(gs), seed);
  auto out = open_output(g, m, seed, "multi_cycle_trace.csv");
  out << "cycle," << TraceRecord::csv_header() << "\n";
  auto results = sim.run_multi_cycle(configs);
  for (size_t c = 0; c < results.size(); ++c) {
    out << "# cycle " << c << " gamma=" << gammas[c] << "\n";
    write_trace(out, results[c].trace, static_cast<int>(c));
  }
  save_edge_list(sim.graph(),
                 (fs::path(g.out_dir) / "final.edgelist").string());
  for (size_t c = 0; c < results.size(); ++c)
    std::cout << "cycle " << c << " gamma=" << gammas[c]
              << " final gamma_f=" << results[c].trace.back().gamma_f << "\n";
}

void cmd_tvd_sweep(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  long reps = pick_reps(g, m);
  double gamma = m.get_double("gamma");
  auto l_grid = m.get_int_list("l_grid");
  auto out = open_output(g, m, seed, "tvd_sweep.csv");
  out << "l,tvd_avg,tvd_min,tvd_max\n";
  std::vector<double> avg(l_grid.size(), 0.0), lo(l_grid.size(), 1e300),
      hi(l_grid.size(), -1e300);
  for (long rep = 0; rep < reps; ++rep) {
    std::uint64_t run_seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(rep)));
    GenSpec gs = gen_spec_from(m, run_seed);
    Graph graph = generate(gs);
    TargetSpec spec(gamma, graph.node_count());
    long R = auto_sample_count(m, spec);
    Rng rng = make_rng(run_seed);
    auto curve = tvd_curve(graph, spec, l_grid, R,
                           start_policy_from(m, graph.node_count()), rng);
    for (size_t k = 0; k < curve.size(); ++k) {
      avg[k] += curve[k] / reps;
      lo[k] = std::min(lo[k], curve[k]);
      hi[k] = std::max(hi[k], curve[k]);
    }
  }
  for (size_t k = 0; k < l_grid.size(); ++k)
    out << l_grid[k] << "," << avg[k] << "," << lo[k] << "," << hi[k] << "\n";
}

void cmd_min_walk_length(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  long reps = pick_reps(g, m);
  double epsilon = m.get_double("epsilon", 0.05);
  auto n_list = m.get_int_list("n_list");
  auto gammas = m.get_double_list("gammas");
  auto l_grid = m.get_int_list("l_grid");
  auto out = open_output(g, m, seed, "min_walk_length.csv");
  out << "n,gamma,l_min\n";
  for (int n : n_list) {
    for (double gamma : gammas) {
      std::vector<double> avg(l_grid.size(), 0.0);
      for (long rep = 0; rep < reps; ++rep) {
        std::uint64_t run_seed =
            mix64(seed ^ mix64(static_cast<std::uint64_t>(n) * 7919 + rep) ^
                  mix64(static_cast<std::uint64_t>(gamma * 1000)));
        GenSpec gs = gen_spec_from(m, run_seed, n);
        Graph graph = generate(gs);
        TargetSpec spec(gamma, n);
        long R = auto_sample_count(m, spec);
        Rng rng = make_rng(run_seed);
        auto curve = tvd_curve(graph, spec, l_grid, R,
                               start_policy_from(m, n), rng);
        for (size_t k = 0; k < curve.size(); ++k) avg[k] += curve[k] / reps;
      }
      int l_min = -1;  // sentinel: threshold not reached on this grid
      for (size_t k = 0; k < l_grid.size(); ++k)
        if (avg[k] <= epsilon) {
          l_min = l_grid[k];
          break;
        }
      out << n << "," << gamma << "," << l_min << "\n";
      std::cout << "n=" << n << " gamma=" << gamma << " l_min=" << l_min
                << "\n";
    }
  }
}

void cmd_degree_correlation(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  long reps = pick_reps(g, m);
  double gamma = m.get_double("gamma");
  int l = static_cast<int>(m.get_int("l"));
  auto out = open_output(g, m, seed, "degree_correlation.csv");
  out << "rep,node,degree,tvd\n";
  double corr_sum = 0;
  bool any_mixed = false;
  for (long rep = 0; rep < reps; ++rep) {
    std::uint64_t run_seed = mix64(seed ^ mix64(static_cast<std::uint64_t>(rep)));
    GenSpec gs = gen_spec_from(m, run_seed);
    Graph graph = generate(gs);
    TargetSpec spec(gamma, graph.node_count());
    long R = m.get_int("R_per_node", 0);
    if (R <= 0) R = static_cast<long>(std::ceil(25.0 / spec.pi_min()));
    Rng rng = make_rng(run_seed);
    auto res = degree_tvd_correlation(graph, spec, l, R, rng);
    for (const auto& row : res.rows)
      out << rep << "," << row.node << "," << row.degree << "," << row.tvd
          << "\n";
    corr_sum += res.spearman;
    if (res.degenerate) std::cerr << "warning: degenerate degrees (rep " << rep << ")\n";
    // Oracle check for the mixed regime: if even the worst start is
    // already converged, per-node TVDs only show sampling noise.
    if (graph.node_count() <= kEigensolveMaxN) {
      Eigen::MatrixXd P = transition_matrix(graph, spec);
      Eigen::VectorXd pi = stationary_distribution(spec);
      double worst = 0;
      for (NodeId s : {NodeId(1), NodeId(graph.node_count())})
        worst = std::max(worst,
                         total_variation(exact_distribution(P, s, l), pi));
      double noise_floor = 0.4 * std::sqrt(static_cast<double>(graph.node_count()) / R);
      if (worst < 0.25 * noise_floor) any_mixed = true;
    }
  }
  out << "# spearman_avg=" << corr_sum / reps << "\n";
  if (any_mixed) out << "# mixed_regime=1\n";
  std::cout << "spearman=" << corr_sum / reps
            << (any_mixed ? " (mixed regime: walk already converged)" : "")
            << "\n";
}

void cmd_fit(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  std::vector<int> sample;
  if (m.has("input")) {
    Graph graph = load_edge_list(m.get_string("input"));
    for (NodeId v = 1; v <= graph.node_count(); ++v)
      sample.push_back(graph.degree(v));
  } else {
    double gamma = m.get_double("gamma");
    int x_min = static_cast<int>(m.get_int("x_min", 1));
    long count = m.get_int("samples", 100000);
    Rng rng = make_rng(seed);
    sample = sample_discrete_power_law(gamma, x_min, count, rng);
  }
  FitResult fit = fit_power_law(sample, m.get_int("min_tail", 50));
  auto out = open_output(g, m, seed, "fit.csv");
  out << "gamma_f,ks_D,dmin,n_tail\n";
  out << fit.gamma_f << "," << fit.ks_D << "," << fit.d_min_fit << ","
      << fit.n_tail << "\n";
  std::cout << "gamma_f=" << fit.gamma_f << " ks_D=" << fit.ks_D
            << " dmin=" << fit.d_min_fit << " n_tail=" << fit.n_tail << "\n";
}

void cmd_bounds(const GlobalOpts& g) {
  Manifest m = Manifest::load(g.manifest_path);
  std::uint64_t seed = pick_seed(g, m);
  double gamma = m.get_double("gamma");
  double epsilon = m.get_double("epsilon", 0.05);
  Graph graph = m.has("input") ? load_edge_list(m.get_string("input"))
                               : generate(gen_spec_from(m, seed));
  NodeId s = static_cast<NodeId>(m.get_int("s", 1));
  TargetSpec spec(gamma, graph.node_count());
  BoundReport report =
      bound_report(graph, spec, s, epsilon, m.get_double("gamma_i", 3.0));
  auto out = open_output(g, m, seed, "bounds.csv");
  out << BoundReport::csv_header() << "\n" << report.csv_row() << "\n";
  std::cout << "l_zipf=" << report.l_zipf;
  if (report.lambda2_computed)
    std::cout << " l_spectral=" << report.l_spectral
              << " lambda2=" << report.lambda2;
  std::cout << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-free overlay rewiring experiment runner"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--manifest", g.manifest_path, "Run manifest path");
  app.add_option("--out", g.out_dir, "Output directory");
  std::uint64_t seed_val = 0;
  auto* seed_opt = app.add_option("--seed", seed_val, "RNG seed override");
  long reps_val = 0;
  auto* reps_opt = app.add_option("--reps", reps_val, "Repetition override");
  app.add_flag("--force", g.force, "Overwrite existing outputs");

  std::string plot_csv, plot_kind, plot_out;
  auto* plot = app.add_subcommand("plot", "Render a CSV as an SVG plot");
  plot->add_option("--csv", plot_csv, "Input CSV")->required();
  plot->add_option("--kind", plot_kind, "trace|degree|tvd|minwalk")->required();
  plot->add_option("--output", plot_out, "Output SVG path")->required();

  std::map<std::string, void (*)(const GlobalOpts&)> commands = {
      {"generate", cmd_generate},
      {"rewire", cmd_rewire},
      {"multi-cycle", cmd_multi_cycle},
      {"tvd-sweep", cmd_tvd_sweep},
      {"min-walk-length", cmd_min_walk_length},
      {"degree-correlation", cmd_degree_correlation},
      {"fit", cmd_fit},
      {"bounds", cmd_bounds},
  };
  for (auto& [name, fn] : commands)
    app.add_subcommand(name, "Run the '" + name + "' experiment");

  CLI11_PARSE(app, argc, argv);
  if (*seed_opt) g.seed = seed_val;
  if (*reps_opt) g.reps = reps_val;

  try {
    if (plot->parsed()) {
      if (!plot_out.empty() && fs::exists(plot_out) && !g.force)
        throw ManifestError("output exists (use --force to overwrite): " +
                            plot_out);
      write_plot(read_csv(plot_csv), plot_kind, plot_out);
      return 0;
    }
    for (auto& [name, fn] : commands) {
      if (app.get_subcommand(name)->parsed()) {
        if (g.manifest_path.empty())
          throw ManifestError("--manifest is required for '" + name + "'");
        fn(g);
        return 0;
      }
    }
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const ManifestError& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return kExitManifest;
  } catch (const PlotError& e) {
    std::cerr << "plot error: " << e.what() << "\n";
    return kExitManifest;
  } catch (const GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGuard;
  }
}
