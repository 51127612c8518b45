#include "rewire/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numeric>

#include "rewire/walk.hpp"

namespace rewire {

double total_variation(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("total_variation: mismatched support");
  if (std::abs(p.sum() - 1.0) > 1e-9 || std::abs(q.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("total_variation: inputs must sum to 1");
  return 0.5 * (p - q).cwiseAbs().sum();
}

namespace {

void check_sample_guard(const TargetSpec& spec, long R) {
  double expect_min = static_cast<double>(R) * spec.pi_min();
  if (expect_min < 5.0)
    throw GuardError("estimate_tvd: R*pi_min = " + std::to_string(expect_min) +
                     " < 5; increase R");
  if (expect_min < 20.0) {
    static bool warned = false;
    if (!warned) {
      std::cerr << "warning: R*pi_min = " << expect_min
                << " < 20; minimum-probability nodes are rarely hit\n";
      warned = true;
    }
  }
}

double tvd_from_hits(const std::vector<long>& hits, long R,
                     const TargetSpec& spec) {
  double acc = 0.0;
  for (int i = 1; i <= spec.n(); ++i) {
    double emp = static_cast<double>(hits[static_cast<size_t>(i - 1)]) / R;
    acc += std::abs(emp - spec.pi(i));
  }
  return 0.5 * acc;
}

NodeId draw_start(const StartPolicy& start, int n, Rng& rng) {
  if (!start.uniform) return start.fixed;
  std::uniform_int_distribution<NodeId> pick(1, n);
  return pick(rng);
}

}  // namespace

TvdEstimate estimate_tvd(const Graph& g, const TargetSpec& spec, int l,
                         long R, StartPolicy start, Rng& rng) {
  check_sample_guard(spec, R);
  TvdEstimate est;
  est.trials = R;
  est.hits.assign(static_cast<size_t>(g.node_count()), 0);
  for (long r = 0; r < R; ++r) {
    NodeId s = draw_start(start, g.node_count(), rng);
    NodeId end = run_walk(g, s, l, spec, rng);
    ++est.hits[static_cast<size_t>(end - 1)];
  }
  est.tvd = tvd_from_hits(est.hits, R, spec);
  return est;
}

std::vector<double> tvd_curve(const Graph& g, const TargetSpec& spec,
                              const std::vector<int>& l_grid, long R,
                              StartPolicy start, Rng& rng) {
  if (l_grid.empty()) throw std::invalid_argument("tvd_curve: empty grid");
  if (!std::is_sorted(l_grid.begin(), l_grid.end()))
    throw std::invalid_argument("tvd_curve: grid must be ascending");
  check_sample_guard(spec, R);
  size_t n = static_cast<size_t>(g.node_count());
  std::vector<std::vector<long>> hits(l_grid.size(), std::vector<long>(n, 0));
  int l_max = l_grid.back();
  for (long r = 0; r < R; ++r) {
    NodeId cur = draw_start(start, g.node_count(), rng);
    size_t next = 0;
    for (int hop = 0; hop <= l_max; ++hop) {
      while (next < l_grid.size() && l_grid[next] == hop) {
        ++hits[next][static_cast<size_t>(cur - 1)];
        ++next;
      }
      if (hop == l_max) break;
      cur = mh_step(g, cur, spec, rng);
    }
  }
  std::vector<double> out(l_grid.size());
  for (size_t k = 0; k < l_grid.size(); ++k)
    out[k] = tvd_from_hits(hits[k], R, spec);
  return out;
}

std::optional<int> min_walk_length(const Graph& g, const TargetSpec& spec,
                                   double epsilon, long R,
                                   const std::vector<int>& l_grid,
                                   StartPolicy start, Rng& rng) {
  auto curve = tvd_curve(g, spec, l_grid, R, start, rng);
  for (size_t k = 0; k < l_grid.size(); ++k)
    if (curve[k] <= epsilon) return l_grid[k];
  return std::nullopt;
}

DegreeTvdResult degree_tvd_correlation(const Graph& g, const TargetSpec& spec,
                                       int l, long R_per_node, Rng& rng) {
  check_sample_guard(spec, R_per_node);
  DegreeTvdResult res;
  std::vector<long> hits(static_cast<size_t>(g.node_count()));
  for (NodeId s = 1; s <= g.node_count(); ++s) {
    std::fill(hits.begin(), hits.end(), 0);
    for (long r = 0; r < R_per_node; ++r) {
      NodeId end = run_walk(g, s, l, spec, rng);
      ++hits[static_cast<size_t>(end - 1)];
    }
    res.rows.push_back({s, g.degree(s), tvd_from_hits(hits, R_per_node, spec)});
  }
  std::vector<double> deg, tvd;
  for (const auto& row : res.rows) {
    deg.push_back(row.degree);
    tvd.push_back(row.tvd);
  }
  bool all_equal = std::adjacent_find(deg.begin(), deg.end(),
                                      std::not_equal_to<>()) == deg.end();
  if (all_equal) {
    res.degenerate = true;
    res.spearman = 0.0;
  } else {
    res.spearman = spearman_correlation(deg, tvd);
  }
  return res;
}

DegreeHistogram degree_distribution(const Graph& g) {
  DegreeHistogram h;
  for (NodeId v = 1; v <= g.node_count(); ++v) {
    int d = g.degree(v);
    ++h.counts[d];
    h.max_degree = std::max(h.max_degree, d);
  }
  h.mean_degree = g.mean_degree();
  return h;
}

double power_law_tail_sum(double gamma, int a) {
  if (gamma <= 1.0) throw std::invalid_argument("tail sum diverges for gamma <= 1");
  if (a < 1) throw std::invalid_argument("tail sum: a >= 1");
  // Short direct sum, then an Euler-Maclaurin remainder from m >= 64.
  const int em_from = 64;
  long double acc = 0.0L;
  long double g = gamma;
  int m = std::max(a, em_from);
  for (int k = a; k < m; ++k)
    acc += std::pow(static_cast<long double>(k), -g);
  long double M = static_cast<long double>(m);
  acc += std::pow(M, 1.0L - g) / (g - 1.0L) + 0.5L * std::pow(M, -g) +
         g / 12.0L * std::pow(M, -g - 1.0L) -
         g * (g + 1.0L) * (g + 2.0L) / 720.0L * std::pow(M, -g - 3.0L);
  return static_cast<double>(acc);
}

FitResult fit_power_law(const std::vector<int>& degrees, long min_tail,
                        int d_min_floor) {
  std::vector<int> xs;
  xs.reserve(degrees.size());
  for (int d : degrees)
    if (d >= 1) xs.push_back(d);
  if (xs.size() < static_cast<size_t>(min_tail))
    throw GuardError("fit_power_law: too few samples");
  std::sort(xs.begin(), xs.end());
  if (xs.front() == xs.back())
    throw GuardError("fit_power_law: degenerate sample (all degrees equal)");

  size_t n = xs.size();
  // Suffix sums of ln(x) so the MLE is O(1) per candidate d_min.
  std::vector<long double> suffix_ln(n + 1, 0.0L);
  for (size_t i = n; i-- > 0;)
    suffix_ln[i] = suffix_ln[i + 1] + std::log(static_cast<long double>(xs[i]));

  std::vector<size_t> distinct_at;  // index of first occurrence of each value
  for (size_t i = 0; i < n; ++i)
    if (i == 0 || xs[i] != xs[i - 1]) distinct_at.push_back(i);

  FitResult best;
  bool have_best = false;
  for (size_t ci = 0; ci < distinct_at.size(); ++ci) {
    size_t i0 = distinct_at[ci];
    int xmin = xs[i0];
    long n_tail = static_cast<long>(n - i0);
    if (xmin < d_min_floor || n_tail < min_tail) continue;
    long double log_sum =
        suffix_ln[i0] - n_tail * std::log(static_cast<long double>(xmin) - 0.5L);
    double gamma_hat =
        1.0 + static_cast<double>(n_tail) / static_cast<double>(log_sum);

    // KS over the tail CDF conditioned on x >= xmin.
    double zeta = power_law_tail_sum(gamma_hat, xmin);
    double ks = 0.0;
    for (size_t cj = ci; cj < distinct_at.size(); ++cj) {
      int x = xs[distinct_at[cj]];
      size_t next = cj + 1 < distinct_at.size() ? distinct_at[cj + 1] : n;
      double emp_cdf = static_cast<double>(next - i0) / n_tail;
      double model_cdf = 1.0 - power_law_tail_sum(gamma_hat, x + 1) / zeta;
      ks = std::max(ks, std::abs(emp_cdf - model_cdf));
    }
    if (!have_best || ks < best.ks_D) {
      best = {gamma_hat, xmin, ks, n_tail};
      have_best = true;
    }
  }
  if (!have_best)
    throw GuardError("fit_power_law: no candidate d_min with enough tail samples");
  return best;
}

std::vector<int> sample_discrete_power_law(double gamma, int x_min, long count,
                                           Rng& rng) {
  if (gamma <= 1.0 || x_min < 1 || count < 0)
    throw std::invalid_argument("sample_discrete_power_law: bad parameters");
  double zeta = power_law_tail_sum(gamma, x_min);
  // CDF table; rare draws beyond the cap fall back to the continuous
  // tail inverse.
  const int table_len = 1 << 20;
  std::vector<double> cdf;
  cdf.reserve(table_len);
  double acc = 0.0;
  int k = x_min;
  while (static_cast<int>(cdf.size()) < table_len && acc < 1.0 - 1e-12) {
    acc += std::pow(static_cast<double>(k), -gamma) / zeta;
    cdf.push_back(acc);
    ++k;
  }
  int cap = x_min + static_cast<int>(cdf.size()) - 1;
  double cap_cdf = cdf.back();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> out;
  out.reserve(static_cast<size_t>(count));
  for (long i = 0; i < count; ++i) {
    double u = unit(rng);
    if (u <= cap_cdf) {
      auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      out.push_back(x_min + static_cast<int>(it - cdf.begin()));
    } else {
      // invert the leading tail term: P(X >= x) ~ x^(1-gamma)/((gamma-1) zeta)
      double surv = 1.0 - u;
      double x = std::pow(surv * (gamma - 1.0) * zeta, -1.0 / (gamma - 1.0));
      out.push_back(std::max(cap + 1, static_cast<int>(std::floor(x))));
    }
  }
  return out;
}

double spearman_correlation(const std::vector<double>& x,
                            const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("spearman: need matched samples, size >= 2");
  auto ranks = [](const std::vector<double>& v) {
    size_t n = v.size();
    std::vector<size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](size_t a, size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    size_t i = 0;
    while (i < n) {
      size_t j = i;
      while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
      double avg = 0.5 * (i + j) + 1.0;  // tie-averaged rank
      for (size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  auto rx = ranks(x);
  auto ry = ranks(y);
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
  double sxy = 0, sxx = 0, syy = 0;
  for (size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace rewire
