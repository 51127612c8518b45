#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <vector>

#include "rewire/graph.hpp"
#include "rewire/stationary.hpp"

namespace rewire {

/// Runtime guard violation (sample sizes, fit preconditions, ...).
struct GuardError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// D(p,q) = 1/2 sum |p_v - q_v|. Both arguments must share support size
/// and sum to 1 within 1e-9.
double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

struct StartPolicy {
  bool uniform = true;
  NodeId fixed = 1;
  static StartPolicy Uniform() { return {true, 1}; }
  static StartPolicy Fixed(NodeId s) { return {false, s}; }
};

struct TvdEstimate {
  double tvd = 0.0;
  std::vector<long> hits;  // per node, index 0 = node 1
  long trials = 0;
};

/// Runs R independent biased walks of length l and returns the TVD between
/// observed hit frequencies and pi^gamma. Hard-fails when R*pi_min < 5,
/// warns (once, stderr) below R*pi_min = 20.
TvdEstimate estimate_tvd(const Graph& g, const TargetSpec& spec, int l,
                         long R, StartPolicy start, Rng& rng);

/// TVD at every checkpoint in an ascending l_grid, sharing one batch of R
/// walks of length max(l_grid) (each checkpoint estimate is unbiased).
std::vector<double> tvd_curve(const Graph& g, const TargetSpec& spec,
                              const std::vector<int>& l_grid, long R,
                              StartPolicy start, Rng& rng);

/// Smallest grid l with TVD <= epsilon under the given start policy;
/// nullopt if none reaches it. Fixed worst-case starts (the least likely
/// node) give conservative lengths; uniform starts average over nodes.
std::optional<int> min_walk_length(const Graph& g, const TargetSpec& spec,
                                   double epsilon, long R,
                                   const std::vector<int>& l_grid,
                                   StartPolicy start, Rng& rng);

struct DegreeTvdRow {
  NodeId node = 0;
  int degree = 0;
  double tvd = 0.0;
};

struct DegreeTvdResult {
  std::vector<DegreeTvdRow> rows;
  double spearman = 0.0;
  bool degenerate = false;  // all degrees equal: correlation undefined
};

/// Per-start-node TVD (R_per_node walks each) plus the Spearman rank
/// correlation between start degree and TVD.
DegreeTvdResult degree_tvd_correlation(const Graph& g, const TargetSpec& spec,
                                       int l, long R_per_node, Rng& rng);

struct DegreeHistogram {
  std::map<int, long> counts;  // degree -> node count
  int max_degree = 0;
  double mean_degree = 0.0;
};

DegreeHistogram degree_distribution(const Graph& g);

/// Maximum-likelihood power-law fit of a degree sample.
struct FitResult {
  double gamma_f = 0.0;
  int d_min_fit = 1;
  double ks_D = 1.0;
  long n_tail = 0;
};

/// Discrete MLE with the -1/2 shift approximation, scanning candidate
/// d_min values and keeping the one minimizing the KS statistic of the
/// tail CDF. Candidates with fewer than min_tail samples are skipped.
FitResult fit_power_law(const std::vector<int>& degrees, long min_tail = 50,
                        int d_min_floor = 1);

/// Hurwitz-style tail sum: sum_{k>=a} k^(-gamma), gamma > 1.
double power_law_tail_sum(double gamma, int a);

/// Inverse-CDF sampler for the discrete power law p(k) ~ k^(-gamma),
/// k >= x_min. Exposed for fitter self-tests.
std::vector<int> sample_discrete_power_law(double gamma, int x_min, long count,
                                           Rng& rng);

/// Spearman rank correlation with tie-averaged ranks.
double spearman_correlation(const std::vector<double>& x,
                            const std::vector<double>& y);

}  // namespace rewire
