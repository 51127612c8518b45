#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rewire/graph.hpp"

namespace rewire {

/// Maps the target degree-distribution exponent to the weight exponent
/// alpha = 1/(gamma-1). gamma=2 (alpha=1) is accepted for bound
/// computations; values below 2 are rejected.
double alpha_from_gamma(double gamma);

/// Target distribution over node IDs: pi_i = i^(-1/(gamma-1)) / norm.
/// The normalization and the per-node power i^alpha are computed once and
/// cached; walk steps only ever need ratios.
class TargetSpec {
 public:
  TargetSpec(double gamma, int n);

  double gamma() const { return gamma_; }
  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double norm() const { return norm_; }

  /// i^alpha (cached); pi_i = 1 / (id_pow(i) * norm).
  double id_pow(NodeId i) const { return pow_[static_cast<size_t>(i)]; }
  double pi(NodeId i) const { return 1.0 / (id_pow(i) * norm_); }
  double pi_min() const { return pi(n_); }

 private:
  double gamma_;
  int n_;
  double alpha_;
  double norm_;
  std::vector<double> pow_;  // pow_[i] = i^alpha, index 0 unused
};

/// Full stationary vector pi^gamma (entry k-1 is node k).
Eigen::VectorXd stationary_distribution(const TargetSpec& spec);

/// Unclamped Metropolis ratio for a move i -> j:
/// (pi_j/pi_i)(d_i/d_j) = (i/j)^(1/(gamma-1)) * d_i/d_j.
/// Acceptance probability is min{ratio, 1}.
double acceptance_ratio(NodeId i, NodeId j, int d_i, int d_j,
                        const TargetSpec& spec);

}  // namespace rewire
