#pragma once

#include <Eigen/Dense>

#include "rewire/graph.hpp"
#include "rewire/stationary.hpp"

namespace rewire {

/// Result of one double-length edge-sampling walk: the node reached at
/// hop l (future edge midpoint) and at hop 2l, with self-loop accounting
/// so the protocol layer can report true message cost.
struct WalkOutcome {
  NodeId endpoint_mid = 0;
  NodeId endpoint_end = 0;
  int hops_taken = 0;   // counts self-loops
  int self_loops = 0;
};

/// One Metropolis-Hastings hop: pick a uniform neighbor v, accept with
/// probability min{ratio, 1}, otherwise stay (self-loop). Consumes exactly
/// one neighbor draw and one uniform draw.
NodeId mh_step(const Graph& g, NodeId current, const TargetSpec& spec,
               Rng& rng);

/// Node occupied after exactly `length` biased hops.
NodeId run_walk(const Graph& g, NodeId start, int length,
                const TargetSpec& spec, Rng& rng);

/// One continuous walk of length 2l recording the hop-l and hop-2l nodes.
WalkOutcome sample_edge_endpoints(const Graph& g, NodeId start, int l,
                                  const TargetSpec& spec, Rng& rng);

/// Guard for the dense matrix oracle.
inline constexpr int kTransitionMatrixMaxN = 5000;

/// Dense row-stochastic transition matrix of the biased walk:
/// P_ij = (1/d_i) min{(i/j)^(1/(gamma-1)) d_i/d_j, 1} on edges, the
/// remaining row mass on the diagonal, 0 elsewhere.
Eigen::MatrixXd transition_matrix(const Graph& g, const TargetSpec& spec);

/// e_start * P^l via repeated vector-matrix products.
Eigen::VectorXd exact_distribution(const Eigen::MatrixXd& P, NodeId start,
                                   long l);

}  // namespace rewire
