#pragma once

#include <string>

#include "rewire/graph.hpp"
#include "rewire/rng.hpp"

namespace rewire {

enum class GenModel { BA, ER };

/// Parameters of an initial-overlay generator run.
struct GenSpec {
  GenModel model = GenModel::BA;
  int n = 0;
  int m_target = 0;      // edges-per-new-node (BA) or total edge count (ER)
  std::uint64_t seed = 1;
  bool permute_ids = false;

  std::string meta() const;
};

/// Barabasi-Albert preferential attachment starting from a complete graph
/// on m_per_node+1 nodes; duplicate targets are resampled so the graph
/// stays simple. Result is connected with m ~= n * m_per_node.
Graph generate_ba(int n, int m_per_node, Rng& rng, bool permute_ids = false);

/// G(n,m): m distinct edges uniform among all pairs, regenerated from
/// scratch until connected.
Graph generate_er(int n, int m, Rng& rng);

Graph generate(const GenSpec& spec);

}  // namespace rewire
