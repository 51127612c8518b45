#pragma once

#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rewire/rng.hpp"

namespace rewire {

/// 1-based node identifier, fixed for the lifetime of a simulation.
using NodeId = int;

/// Undirected simple graph with per-edge "rewired" marks.
///
/// Adjacency and marks are stored symmetrically per endpoint; neighbor
/// sets support O(1) membership and O(1) uniform sampling. Degrees are
/// always derived from the adjacency itself.
class Graph {
 public:
  explicit Graph(int n);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return m_; }
  int marked_edge_count() const { return marked_m_; }

  int degree(NodeId v) const { return static_cast<int>(rec(v).nbrs.size()); }
  int marked_degree(NodeId v) const { return static_cast<int>(rec(v).marked.size()); }
  int unmarked_degree(NodeId v) const { return degree(v) - marked_degree(v); }

  bool has_edge(NodeId a, NodeId b) const;
  bool is_marked(NodeId a, NodeId b) const;

  /// Adds edge (a,b). Returns false (and changes nothing) if the edge
  /// already exists. Throws on self-loops.
  bool add_edge(NodeId a, NodeId b);

  /// Removes edge (a,b) and its mark. Returns false if the edge is absent.
  bool remove_edge(NodeId a, NodeId b);

  /// Marks / unmarks an existing edge symmetrically. Throws if absent.
  void set_mark(NodeId a, NodeId b, bool marked);
  void clear_marks();

  const std::vector<NodeId>& neighbors(NodeId v) const { return rec(v).nbrs; }

  /// Uniform neighbor of v. Throws if v is isolated.
  NodeId random_neighbor(NodeId v, Rng& rng) const;

  /// Uniform over neighbors whose shared edge is unmarked; nullopt if all
  /// edges of v are marked (or v is isolated).
  std::optional<NodeId> random_unmarked_neighbor(NodeId v, Rng& rng) const;

  std::vector<std::vector<NodeId>> connected_components() const;
  bool is_connected() const;

  /// Max over all pairs of shortest-path length. Throws if disconnected.
  int diameter() const;

  int max_degree() const;
  double mean_degree() const;

  /// Full-scan check of adjacency/mark symmetry and edge-count bookkeeping.
  bool validate() const;

 private:
  struct NodeRec {
    std::vector<NodeId> nbrs;              // sampling order
    std::unordered_map<NodeId, int> pos;   // neighbor -> index in nbrs
    std::unordered_set<NodeId> marked;     // subset of nbrs
  };

  const NodeRec& rec(NodeId v) const {
    check_node(v);
    return nodes_[static_cast<size_t>(v - 1)];
  }
  NodeRec& rec(NodeId v) {
    check_node(v);
    return nodes_[static_cast<size_t>(v - 1)];
  }
  void check_node(NodeId v) const {
    if (v < 1 || v > static_cast<int>(nodes_.size()))
      throw std::out_of_range("node id out of range");
  }

  std::vector<NodeRec> nodes_;
  int m_ = 0;
  int marked_m_ = 0;
};

}  // namespace rewire
