#include "rewire/stationary.hpp"

#include <cmath>
#include <stdexcept>

namespace rewire {

double alpha_from_gamma(double gamma) {
  if (!(gamma >= 2.0))
    throw std::invalid_argument("gamma must be >= 2");
  return 1.0 / (gamma - 1.0);
}

TargetSpec::TargetSpec(double gamma, int n)
    : gamma_(gamma), n_(n), alpha_(alpha_from_gamma(gamma)) {
  if (n < 1) throw std::invalid_argument("TargetSpec: need n >= 1");
  pow_.resize(static_cast<size_t>(n) + 1);
  pow_[0] = 0.0;
  long double acc = 0.0L;
  for (int i = 1; i <= n; ++i) {
    double p = std::pow(static_cast<double>(i), alpha_);
    pow_[static_cast<size_t>(i)] = p;
    acc += 1.0L / static_cast<long double>(p);
  }
  norm_ = static_cast<double>(acc);
}

Eigen::VectorXd stationary_distribution(const TargetSpec& spec) {
  Eigen::VectorXd pi(spec.n());
  for (int i = 1; i <= spec.n(); ++i) pi(i - 1) = spec.pi(i);
  return pi;
}

double acceptance_ratio(NodeId i, NodeId j, int d_i, int d_j,
                        const TargetSpec& spec) {
  if (d_i < 1 || d_j < 1)
    throw std::invalid_argument("acceptance_ratio: zero degree");
  return spec.id_pow(i) / spec.id_pow(j) * static_cast<double>(d_i) /
         static_cast<double>(d_j);
}

}  // namespace rewire
