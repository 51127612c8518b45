#pragma once

#include <Eigen/Dense>

#include "rewire/graph.hpp"
#include "rewire/stationary.hpp"

namespace rewire {

/// Size guard for the dense eigensolve; larger graphs get formula bounds
/// only.
inline constexpr int kEigensolveMaxN = 1000;

/// Second-largest eigenvalue modulus of a reversible chain, via the
/// symmetrization diag(pi)^{1/2} P diag(pi)^{-1/2} and a dense
/// self-adjoint solve. Eigenvalues of the chain are real.
double second_eigenvalue_modulus(const Eigen::MatrixXd& P,
                                 const Eigen::VectorXd& pi);

struct SpectralBound {
  double value = 0.0;
  double lambda2 = 0.0;
  bool vacuous = false;  // pi_s * epsilon >= 1: the log goes nonpositive
};

/// l <= ln(1/(pi_s epsilon)) / (1 - |lambda2(P)|), with lambda2 computed
/// numerically from the dense matrix.
SpectralBound spectral_bound(const Eigen::MatrixXd& P,
                             const Eigen::VectorXd& pi, NodeId s,
                             double epsilon);

/// Lower bound for the eigenvalue gap: pi_min / (D * d_max).
double eigengap_lower_bound(double pi_min, int diam, int d_max);

/// Walk-length bound for Zipf-like stationary distributions:
/// l <= ln(1/(pi_s epsilon)) * D * d_max / pi_min.
double zipf_walk_bound(double pi_s, double pi_min, int diam, int d_max,
                       double epsilon);

/// Order estimate ln(n s^(1/(gamma-1)) / eps) * ln(n) * n^(1/gamma_i) * n H_n
/// with implied constant 1; H_n is the exact harmonic number. Not a hard
/// bound, an order-of-magnitude figure.
double asymptotic_bound(long n, NodeId s, double gamma, double gamma_i,
                        double epsilon);

/// Exact harmonic number H_n.
double harmonic_number(long n);

struct BoundReport {
  int n = 0;
  double gamma = 0.0;
  double epsilon = 0.0;
  NodeId start = 1;
  int diameter = 0;
  int d_max = 0;
  double pi_min = 0.0;
  double pi_s = 0.0;
  bool lambda2_computed = false;
  double lambda2 = 0.0;        // valid when lambda2_computed
  double numeric_gap = 0.0;    // 1 - |lambda2|
  double eigengap_lb = 0.0;
  double l_spectral = 0.0;     // valid when lambda2_computed
  bool spectral_vacuous = false;
  double l_zipf = 0.0;
  double l_asymptotic = 0.0;   // order estimate, gamma_i = gamma of fit below

  std::string csv_row() const;
  static std::string csv_header();
};

/// Assembles every bound for one (graph, target, start, epsilon) instance.
/// The numeric eigensolve runs only under the dense-matrix size guard.
/// gamma_i is the exponent assumed for the initial topology in the
/// asymptotic order estimate.
BoundReport bound_report(const Graph& g, const TargetSpec& spec, NodeId s,
                         double epsilon, double gamma_i = 3.0);

}  // namespace rewire
