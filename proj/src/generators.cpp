#include "rewire/generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace rewire {

std::string GenSpec::meta() const {
  std::ostringstream os;
  os << "model=" << (model == GenModel::BA ? "BA" : "ER") << "\n"
     << "n=" << n << "\n"
     << "m_target=" << m_target << "\n"
     << "seed=" << seed << "\n"
     << "permute_ids=" << (permute_ids ? 1 : 0) << "\n";
  return os.str();
}

namespace {

Graph permute_node_ids(const Graph& g, Rng& rng) {
  int n = g.node_count();
  std::vector<NodeId> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  Graph out(n);
  for (NodeId v = 1; v <= n; ++v)
    for (NodeId u : g.neighbors(v))
      if (u > v) out.add_edge(perm[static_cast<size_t>(v - 1)],
                              perm[static_cast<size_t>(u - 1)]);
  return out;
}

}  // namespace

Graph generate_ba(int n, int m_per_node, Rng& rng, bool permute_ids) {
  if (m_per_node < 1) throw std::invalid_argument("BA: m_per_node must be >= 1");
  if (n <= m_per_node) throw std::invalid_argument("BA: need n > m_per_node");
  Graph g(n);
  // Endpoint multiset: each edge contributes both ends, so uniform draws
  // are degree-proportional.
  std::vector<NodeId> ends;
  ends.reserve(2u * static_cast<size_t>(n) * static_cast<size_t>(m_per_node));
  int seed_n = m_per_node + 1;
  for (NodeId a = 1; a <= seed_n; ++a)
    for (NodeId b = a + 1; b <= seed_n; ++b) {
      g.add_edge(a, b);
      ends.push_back(a);
      ends.push_back(b);
    }
  for (NodeId v = seed_n + 1; v <= n; ++v) {
    std::uniform_int_distribution<size_t> pick(0, ends.size() - 1);
    int attached = 0;
    std::vector<NodeId> chosen;
    while (attached < m_per_node) {
      NodeId t = ends[pick(rng)];
      if (t == v || g.has_edge(v, t)) continue;  // resample collisions
      g.add_edge(v, t);
      chosen.push_back(t);
      ++attached;
    }
    for (NodeId t : chosen) {
      ends.push_back(v);
      ends.push_back(t);
    }
  }
  if (permute_ids) return permute_node_ids(g, rng);
  return g;
}

Graph generate_er(int n, int m, Rng& rng) {
  if (n < 2) throw std::invalid_argument("ER: need n >= 2");
  long max_m = static_cast<long>(n) * (n - 1) / 2;
  if (m < n - 1 || static_cast<long>(m) > max_m)
    throw std::invalid_argument("ER: m must be in [n-1, n(n-1)/2]");
  std::uniform_int_distribution<NodeId> pick(1, n);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Graph g(n);
    while (g.edge_count() < m) {
      NodeId a = pick(rng);
      NodeId b = pick(rng);
      if (a == b) continue;
      g.add_edge(a, b);
    }
    if (g.is_connected()) return g;
  }
  throw std::runtime_error("ER: no connected realization found");
}

Graph generate(const GenSpec& spec) {
  Rng rng = make_rng(spec.seed);
  if (spec.model == GenModel::BA)
    return generate_ba(spec.n, spec.m_target, rng, spec.permute_ids);
  return generate_er(spec.n, spec.m_target, rng);
}

}  // namespace rewire
