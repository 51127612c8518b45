#include "rewire/walk.hpp"

#include <algorithm>

namespace rewire {

NodeId mh_step(const Graph& g, NodeId current, const TargetSpec& spec,
               Rng& rng) {
  NodeId v = g.random_neighbor(current, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  double ratio = acceptance_ratio(current, v, g.degree(current), g.degree(v),
                                  spec);
  return u <= ratio ? v : current;
}

NodeId run_walk(const Graph& g, NodeId start, int length,
                const TargetSpec& spec, Rng& rng) {
  NodeId cur = start;
  for (int i = 0; i < length; ++i) cur = mh_step(g, cur, spec, rng);
  return cur;
}

WalkOutcome sample_edge_endpoints(const Graph& g, NodeId start, int l,
                                  const TargetSpec& spec, Rng& rng) {
  WalkOutcome out;
  NodeId cur = start;
  for (int hop = 1; hop <= 2 * l; ++hop) {
    NodeId next = mh_step(g, cur, spec, rng);
    if (next == cur) ++out.self_loops;
    cur = next;
    ++out.hops_taken;
    if (hop == l) out.endpoint_mid = cur;
  }
  if (l == 0) out.endpoint_mid = start;
  out.endpoint_end = cur;
  return out;
}

Eigen::MatrixXd transition_matrix(const Graph& g, const TargetSpec& spec) {
  int n = g.node_count();
  if (n > kTransitionMatrixMaxN)
    throw std::invalid_argument("transition_matrix: graph too large for dense oracle");
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 1; i <= n; ++i) {
    int d_i = g.degree(i);
    if (d_i == 0) {
      P(i - 1, i - 1) = 1.0;  // absorbing; unreachable in connected graphs
      continue;
    }
    double off = 0.0;
    for (NodeId j : g.neighbors(i)) {
      double r = acceptance_ratio(i, j, d_i, g.degree(j), spec);
      double p = std::min(r, 1.0) / d_i;
      P(i - 1, j - 1) = p;
      off += p;
    }
    P(i - 1, i - 1) = std::max(0.0, 1.0 - off);  // clamp rounding residue
  }
  return P;
}

Eigen::VectorXd exact_distribution(const Eigen::MatrixXd& P, NodeId start,
                                   long l) {
  Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(P.rows());
  v(start - 1) = 1.0;
  for (long i = 0; i < l; ++i) v = v * P;
  return v.transpose();
}

}  // namespace rewire
