#pragma once

#include <cstdint>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "rewire/graph.hpp"
#include "rewire/stationary.hpp"

namespace rewire {

/// In-flight random-walk state. All information related to one rewiring
/// operation travels inside this message.
struct WalkMessage {
  int hops = 0;
  NodeId a = 0;       // walk initiator
  NodeId b = 0;       // a's chosen neighbor (the edge being rewired)
  NodeId target = 0;  // node stored at hop l; 0 = none
  double gamma = 0.0;
  int l = 0;          // per-walk half-length
};

struct SimConfig {
  double delay = 0.0;          // mean wake-up interval; <= 0 picks n/2
  int l = 20;
  double gamma = 2.5;
  double snapshot_every = 0.0; // <= 0: final snapshot only
  double max_time = 0.0;       // <= 0 picks a generous default
  double hop_latency = 1e-3;

  void validate() const;
  double effective_delay(int n) const;
  double effective_max_time(int m, int max_degree, double delay) const;
};

struct Counters {
  long messages_sent = 0;
  long walk_messages = 0;
  long self_loop_hops = 0;
  long walks_started = 0;
  long walks_aborted = 0;
  long walks_died = 0;             // walker stranded on an isolated node
  long rewirings = 0;
  long kept_in_place = 0;        // unrewirable edge (degree-1 end) kept+marked
  long connect_on_existing = 0;    // connect arrived for an existing edge
  long endpoint_target_cases = 0;  // completed rewiring touching a or b
  long isolation_events = 0;       // disconnect left an endpoint at degree 0
};

struct TraceRecord {
  double time = 0.0;
  double gamma_f = 0.0;  // NaN when no fit is possible
  double ks_D = 0.0;
  double d_min_fit = 0.0;
  int max_degree = 0;
  int component_count = 0;
  double rewired_fraction = 0.0;
  long messages = 0;

  static std::string csv_header();
  std::string csv_row() const;
};

struct CycleResult {
  std::vector<TraceRecord> trace;
  bool completed = false;  // every edge marked before max_time
  Counters counters;       // deltas for this cycle
};

struct MessageCost {
  long messages = 0;
  long self_loop_hops = 0;
  long bits = 0;
};

/// Bit estimate: every message carries 4 ID-sized fields plus a hop
/// counter, each ceil(log2 n) bits.
MessageCost message_cost(const Counters& c, int n);

/// True iff `self` (not `other`) initiates the rewiring of their shared
/// edge: higher degree first, smaller ID on ties, degree > 1 on both ends.
bool initiates_rewiring(int d_self, int d_other, NodeId self, NodeId other);

/// Discrete-event simulation of the rewiring protocol: one logical event
/// loop over per-node wake timers and message deliveries, deterministic
/// for a fixed (graph, config, seed).
class Simulator {
 public:
  Simulator(Graph g, std::uint64_t seed);

  /// Event loop until every edge is marked or max_time elapses. Marks are
  /// kept as found (a fully pre-marked graph terminates immediately).
  CycleResult run_cycle(const SimConfig& config);

  /// Sequential cycles, clearing all marks at the start of each; trace
  /// times continue across cycles.
  std::vector<CycleResult> run_multi_cycle(const std::vector<SimConfig>& configs);

  const Graph& graph() const { return graph_; }
  Graph& graph() { return graph_; }
  double clock() const { return clock_; }
  const Counters& counters() const { return counters_; }

 private:
  enum class EventKind { Wake, Walk, Connect, Disconnect };

  struct Event {
    double time;
    std::uint64_t seq;
    EventKind kind;
    NodeId node;      // recipient
    WalkMessage walk; // Walk payload
    NodeId other;     // Connect/Disconnect payload
  };

  struct EventOrder {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.seq > b.seq;
    }
  };

  void schedule(double time, EventKind kind, NodeId node,
                const WalkMessage& walk = {}, NodeId other = 0);
  void schedule_wake(NodeId v);
  void on_wake(NodeId v);
  void on_walk(NodeId at, WalkMessage msg);
  void on_connect(NodeId at, NodeId y);
  void on_disconnect(NodeId at, NodeId b);
  void forward_walk(NodeId at, const WalkMessage& msg);
  TraceRecord snapshot(double at_time) const;

  static long long edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return static_cast<long long>(a) << 32 | static_cast<unsigned>(b);
  }

  Graph graph_;
  Rng rng_;
  // Edges with a walk in flight; the initiator refuses to start a second
  // walk for the same edge, which would break edge-count conservation.
  std::unordered_set<long long> pending_;
  double clock_ = 0.0;
  std::uint64_t seq_ = 0;
  Counters counters_;
  std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;
  const TargetSpec* spec_ = nullptr;  // valid during run_cycle
  const SimConfig* config_ = nullptr;
  double delay_ = 0.0;
};

}  // namespace rewire
