#include "rewire/bounds.hpp"

#include <cmath>
#include <sstream>

#include "rewire/walk.hpp"

namespace rewire {

double second_eigenvalue_modulus(const Eigen::MatrixXd& P,
                                 const Eigen::VectorXd& pi) {
  Eigen::Index n = P.rows();
  Eigen::VectorXd sq = pi.cwiseSqrt();
  Eigen::MatrixXd S(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      S(i, j) = sq(i) * P(i, j) / sq(j);
  // Reversibility makes S symmetric; symmetrize residual round-off.
  S = 0.5 * (S + S.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  const auto& ev = solver.eigenvalues();  // ascending
  double top = ev(n - 1);
  if (std::abs(top - 1.0) > 1e-8)
    throw std::runtime_error("second_eigenvalue_modulus: top eigenvalue != 1 "
                             "(chain not stochastic/reversible?)");
  double second = n >= 2 ? std::abs(ev(n - 2)) : 0.0;
  double bottom = std::abs(ev(0));
  return std::max(second, bottom);
}

SpectralBound spectral_bound(const Eigen::MatrixXd& P,
                             const Eigen::VectorXd& pi, NodeId s,
                             double epsilon) {
  if (s < 1 || s > pi.size())
    throw std::out_of_range("spectral_bound: start node out of range");
  SpectralBound b;
  b.lambda2 = second_eigenvalue_modulus(P, pi);
  double gap = 1.0 - b.lambda2;
  if (gap <= 0.0)
    throw std::runtime_error("spectral_bound: zero spectral gap");
  double arg = pi(s - 1) * epsilon;
  b.value = std::log(1.0 / arg) / gap;
  b.vacuous = arg >= 1.0;
  return b;
}

double eigengap_lower_bound(double pi_min, int diam, int d_max) {
  if (pi_min <= 0.0 || diam <= 0 || d_max <= 0)
    throw std::invalid_argument("eigengap_lower_bound: inputs must be positive");
  return pi_min / (static_cast<double>(diam) * d_max);
}

double zipf_walk_bound(double pi_s, double pi_min, int diam, int d_max,
                       double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("zipf_walk_bound: epsilon must be in (0,1)");
  if (pi_s <= 0.0 || pi_min <= 0.0 || diam <= 0 || d_max <= 0)
    throw std::invalid_argument("zipf_walk_bound: inputs must be positive");
  return std::log(1.0 / (pi_s * epsilon)) * diam * d_max / pi_min;
}

double harmonic_number(long n) {
  long double h = 0.0L;
  for (long k = 1; k <= n; ++k) h += 1.0L / k;
  return static_cast<double>(h);
}

double asymptotic_bound(long n, NodeId s, double gamma, double gamma_i,
                        double epsilon) {
  if (n < 2 || gamma < 2.0 || gamma_i <= 2.0)
    throw std::invalid_argument("asymptotic_bound: need n >= 2, exponents > 2");
  double ln_n = std::log(static_cast<double>(n));
  double log_term =
      std::log(n * std::pow(static_cast<double>(s), 1.0 / (gamma - 1.0)) /
               epsilon);
  // 1/pi_min <= n * H_n = n (ln n + tau + r_n), evaluated exactly.
  double inv_pi_min = n * harmonic_number(n);
  return log_term * ln_n * std::pow(static_cast<double>(n), 1.0 / gamma_i) *
         inv_pi_min;
}

std::string BoundReport::csv_header() {
  return "n,gamma,epsilon,start,diameter,d_max,pi_min,pi_s,lambda2,"
         "numeric_gap,eigengap_lb,l_spectral,spectral_vacuous,l_zipf,"
         "l_asymptotic";
}

std::string BoundReport::csv_row() const {
  std::ostringstream os;
  os << n << "," << gamma << "," << epsilon << "," << start << "," << diameter
     << "," << d_max << "," << pi_min << "," << pi_s << ",";
  if (lambda2_computed)
    os << lambda2 << "," << numeric_gap << ",";
  else
    os << "," << ",";
  os << eigengap_lb << ",";
  if (lambda2_computed)
    os << l_spectral << ",";
  else
    os << ",";
  os << (spectral_vacuous ? 1 : 0) << "," << l_zipf << "," << l_asymptotic;
  return os.str();
}

BoundReport bound_report(const Graph& g, const TargetSpec& spec, NodeId s,
                         double epsilon, double gamma_i) {
  if (!g.is_connected())
    throw std::runtime_error("bound_report: graph must be connected");
  BoundReport r;
  r.n = g.node_count();
  r.gamma = spec.gamma();
  r.epsilon = epsilon;
  r.start = s;
  r.diameter = g.diameter();
  r.d_max = g.max_degree();
  r.pi_min = spec.pi_min();
  r.pi_s = spec.pi(s);
  r.eigengap_lb = eigengap_lower_bound(r.pi_min, r.diameter, r.d_max);
  r.l_zipf = zipf_walk_bound(r.pi_s, r.pi_min, r.diameter, r.d_max, epsilon);
  r.l_asymptotic =
      asymptotic_bound(r.n, s, spec.gamma(), gamma_i, epsilon);
  if (r.n <= kEigensolveMaxN) {
    Eigen::MatrixXd P = transition_matrix(g, spec);
    Eigen::VectorXd pi = stationary_distribution(spec);
    auto sb = spectral_bound(P, pi, s, epsilon);
    r.lambda2_computed = true;
    r.lambda2 = sb.lambda2;
    r.numeric_gap = 1.0 - sb.lambda2;
    r.l_spectral = sb.value;
    r.spectral_vacuous = sb.vacuous;
  }
  return r;
}

}  // namespace rewire
