#include "rewire/graph.hpp"

#include <algorithm>
#include <deque>

namespace rewire {

Graph::Graph(int n) {
  if (n < 1) throw std::invalid_argument("graph needs at least one node");
  nodes_.resize(static_cast<size_t>(n));
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  check_node(b);
  return rec(a).pos.count(b) > 0;
}

bool Graph::is_marked(NodeId a, NodeId b) const {
  check_node(b);
  return rec(a).marked.count(b) > 0;
}

bool Graph::add_edge(NodeId a, NodeId b) {
  if (a == b) throw std::invalid_argument("self-loops are not allowed");
  check_node(a);
  check_node(b);
  if (has_edge(a, b)) return false;
  auto& ra = rec(a);
  auto& rb = rec(b);
  ra.pos[b] = static_cast<int>(ra.nbrs.size());
  ra.nbrs.push_back(b);
  rb.pos[a] = static_cast<int>(rb.nbrs.size());
  rb.nbrs.push_back(a);
  ++m_;
  return true;
}

bool Graph::remove_edge(NodeId a, NodeId b) {
  check_node(a);
  check_node(b);
  if (!has_edge(a, b)) return false;
  if (is_marked(a, b)) set_mark(a, b, false);
  auto drop = [](NodeRec& r, NodeId other) {
    int idx = r.pos.at(other);
    NodeId last = r.nbrs.back();
    r.nbrs[static_cast<size_t>(idx)] = last;
    r.pos[last] = idx;
    r.nbrs.pop_back();
    r.pos.erase(other);
  };
  drop(rec(a), b);
  drop(rec(b), a);
  --m_;
  return true;
}

void Graph::set_mark(NodeId a, NodeId b, bool marked) {
  if (!has_edge(a, b)) throw std::invalid_argument("cannot mark absent edge");
  bool cur = is_marked(a, b);
  if (cur == marked) return;
  if (marked) {
    rec(a).marked.insert(b);
    rec(b).marked.insert(a);
    ++marked_m_;
  } else {
    rec(a).marked.erase(b);
    rec(b).marked.erase(a);
    --marked_m_;
  }
}

void Graph::clear_marks() {
  for (auto& r : nodes_) r.marked.clear();
  marked_m_ = 0;
}

NodeId Graph::random_neighbor(NodeId v, Rng& rng) const {
  const auto& nb = rec(v).nbrs;
  if (nb.empty()) throw std::runtime_error("random_neighbor on isolated node");
  std::uniform_int_distribution<size_t> pick(0, nb.size() - 1);
  return nb[pick(rng)];
}

std::optional<NodeId> Graph::random_unmarked_neighbor(NodeId v, Rng& rng) const {
  const auto& r = rec(v);
  size_t unmarked = r.nbrs.size() - r.marked.size();
  if (unmarked == 0) return std::nullopt;
  if (r.marked.empty()) return random_neighbor(v, rng);
  // Rejection-sample while the unmarked fraction is decent, then scan.
  if (2 * unmarked >= r.nbrs.size()) {
    std::uniform_int_distribution<size_t> pick(0, r.nbrs.size() - 1);
    for (int tries = 0; tries < 64; ++tries) {
      NodeId cand = r.nbrs[pick(rng)];
      if (r.marked.count(cand) == 0) return cand;
    }
  }
  std::vector<NodeId> pool;
  pool.reserve(unmarked);
  for (NodeId u : r.nbrs)
    if (r.marked.count(u) == 0) pool.push_back(u);
  std::uniform_int_distribution<size_t> pick(0, pool.size() - 1);
  return pool[pick(rng)];
}

std::vector<std::vector<NodeId>> Graph::connected_components() const {
  int n = node_count();
  std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
  std::vector<std::vector<NodeId>> comps;
  std::deque<NodeId> queue;
  for (NodeId s = 1; s <= n; ++s) {
    if (seen[static_cast<size_t>(s)]) continue;
    comps.emplace_back();
    seen[static_cast<size_t>(s)] = 1;
    queue.push_back(s);
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      comps.back().push_back(v);
      for (NodeId u : neighbors(v)) {
        if (!seen[static_cast<size_t>(u)]) {
          seen[static_cast<size_t>(u)] = 1;
          queue.push_back(u);
        }
      }
    }
  }
  return comps;
}

bool Graph::is_connected() const {
  return connected_components().size() == 1;
}

int Graph::diameter() const {
  int n = node_count();
  int diam = 0;
  std::vector<int> dist(static_cast<size_t>(n) + 1);
  std::deque<NodeId> queue;
  for (NodeId s = 1; s <= n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<size_t>(s)] = 0;
    queue.push_back(s);
    int reached = 0;
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      ++reached;
      diam = std::max(diam, dist[static_cast<size_t>(v)]);
      for (NodeId u : neighbors(v)) {
        if (dist[static_cast<size_t>(u)] < 0) {
          dist[static_cast<size_t>(u)] = dist[static_cast<size_t>(v)] + 1;
          queue.push_back(u);
        }
      }
    }
    if (reached != n) throw std::runtime_error("diameter of disconnected graph");
  }
  return diam;
}

int Graph::max_degree() const {
  int d = 0;
  for (NodeId v = 1; v <= node_count(); ++v) d = std::max(d, degree(v));
  return d;
}

double Graph::mean_degree() const {
  return 2.0 * m_ / node_count();
}

bool Graph::validate() const {
  long deg_sum = 0;
  long mark_sum = 0;
  for (NodeId v = 1; v <= node_count(); ++v) {
    const auto& r = rec(v);
    deg_sum += static_cast<long>(r.nbrs.size());
    mark_sum += static_cast<long>(r.marked.size());
    if (r.pos.size() != r.nbrs.size()) return false;
    for (NodeId u : r.nbrs) {
      if (u == v) return false;
      if (!has_edge(u, v)) return false;
    }
    for (NodeId u : r.marked) {
      if (r.pos.count(u) == 0) return false;
      if (!is_marked(u, v)) return false;
    }
  }
  return deg_sum == 2L * m_ && mark_sum == 2L * marked_m_;
}

}  // namespace rewire
