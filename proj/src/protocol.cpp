#include "rewire/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rewire/analysis.hpp"

namespace rewire {

void SimConfig::validate() const {
  if (l < 1) throw std::invalid_argument("SimConfig: l must be >= 1");
  if (!(gamma > 2.0))
    throw std::invalid_argument("SimConfig: gamma must be > 2 for the protocol");
  if (delay < 0.0) throw std::invalid_argument("SimConfig: delay must be positive");
  if (hop_latency <= 0.0)
    throw std::invalid_argument("SimConfig: hop_latency must be positive");
}

double SimConfig::effective_delay(int n) const {
  // Default tuned for roughly one rewiring per time unit at m ~ 5n.
  return delay > 0.0 ? delay : n / 2.0;
}

double SimConfig::effective_max_time(int m, int max_degree, double delay) const {
  // A cycle at one rewiring per unit needs ~m units. A hub of degree d
  // initiates almost all of its edges itself and wakes once per `delay`
  // on average, so it alone needs ~d*delay units; leave ample slack for
  // the retry-dominated tail of both regimes.
  if (max_time > 0.0) return max_time;
  return std::max(10.0 * m + 1000.0, 8.0 * delay * max_degree);
}

std::string TraceRecord::csv_header() {
  return "time,gamma_f,ks_D,dmin,max_degree,components,rewired_frac,messages";
}

std::string TraceRecord::csv_row() const {
  std::ostringstream os;
  os << time << "," << gamma_f << "," << ks_D << "," << d_min_fit << ","
     << max_degree << "," << component_count << "," << rewired_fraction << ","
     << messages;
  return os.str();
}

MessageCost message_cost(const Counters& c, int n) {
  MessageCost mc;
  mc.messages = c.messages_sent;
  mc.self_loop_hops = c.self_loop_hops;
  long id_bits = static_cast<long>(std::ceil(std::log2(std::max(2, n))));
  mc.bits = c.messages_sent * 5 * id_bits;  // 4 ID fields + hop counter
  return mc;
}

bool initiates_rewiring(int d_self, int d_other, NodeId self, NodeId other) {
  if (d_self <= 1 || d_other <= 1) return false;
  return d_self > d_other || (d_self == d_other && self < other);
}

Simulator::Simulator(Graph g, std::uint64_t seed)
    : graph_(std::move(g)), rng_(make_rng(seed)) {}

void Simulator::schedule(double time, EventKind kind, NodeId node,
                         const WalkMessage& walk, NodeId other) {
  queue_.push(Event{time, seq_++, kind, node, walk, other});
}

void Simulator::schedule_wake(NodeId v) {
  std::exponential_distribution<double> next(1.0 / delay_);
  schedule(clock_ + next(rng_), EventKind::Wake, v);
}

void Simulator::on_wake(NodeId v) {
  schedule_wake(v);
  if (graph_.unmarked_degree(v) == 0) return;
  auto u = graph_.random_unmarked_neighbor(v, rng_);
  if (!u) return;
  if (graph_.degree(v) <= 1 || graph_.degree(*u) <= 1) {
    // The isolation guard makes this edge unrewirable from either side;
    // once it is the only unmarked edge left no walk could ever free it,
    // so keep it as-is and tell the other endpoint (one message).
    if (pending_.count(edge_key(v, *u))) return;
    graph_.set_mark(v, *u, true);
    ++counters_.kept_in_place;
    ++counters_.messages_sent;
    return;
  }
  if (!initiates_rewiring(graph_.degree(v), graph_.degree(*u), v, *u)) return;
  if (!pending_.insert(edge_key(v, *u)).second) return;  // walk in flight
  WalkMessage msg;
  msg.hops = 0;
  msg.a = v;
  msg.b = *u;
  msg.target = 0;
  msg.gamma = config_->gamma;
  msg.l = config_->l;
  ++counters_.walks_started;
  ++counters_.messages_sent;
  ++counters_.walk_messages;
  schedule(clock_ + config_->hop_latency, EventKind::Walk, *u, msg);
}

void Simulator::forward_walk(NodeId at, const WalkMessage& msg) {
  if (graph_.degree(at) == 0) {
    // Stranded walker: concurrent rewiring removed every edge.
    ++counters_.walks_died;
    ++counters_.walks_aborted;
    pending_.erase(edge_key(msg.a, msg.b));
    return;
  }
  NodeId v = graph_.random_neighbor(at, rng_);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng_);
  double ratio =
      acceptance_ratio(at, v, graph_.degree(at), graph_.degree(v), *spec_);
  if (u <= ratio) {
    ++counters_.messages_sent;
    ++counters_.walk_messages;
    schedule(clock_ + config_->hop_latency, EventKind::Walk, v, msg);
  } else {
    // Self-loop: a hop, but no message exchange.
    ++counters_.self_loop_hops;
    schedule(clock_ + config_->hop_latency, EventKind::Walk, at, msg);
  }
}

void Simulator::on_walk(NodeId at, WalkMessage msg) {
  ++msg.hops;
  if (msg.hops == 2 * msg.l) {
    pending_.erase(edge_key(msg.a, msg.b));
    NodeId target = msg.target;
    if (target != at && target != 0 && !graph_.has_edge(at, target)) {
      if (target == msg.a || target == msg.b || at == msg.a || at == msg.b)
        ++counters_.endpoint_target_cases;
      ++counters_.rewirings;
      counters_.messages_sent += 3;  // connect-to-self is local
      // Both disconnects and both connects act on the same shared edge
      // state, so they apply as one atomic exchange here: checking the
      // guard and mutating in the same event keeps the edge count exact.
      on_disconnect(msg.b, msg.a);
      on_connect(target, at);
      on_connect(at, target);
    } else {
      // Walk dies; the unmarked edge (a,b) is retried on a later wake.
      ++counters_.walks_aborted;
    }
    return;
  }
  if (msg.hops == msg.l) msg.target = at;  // store midpoint, keep walking
  forward_walk(at, msg);
}

void Simulator::on_connect(NodeId at, NodeId y) {
  if (at == y) return;
  if (graph_.has_edge(at, y)) {
    // Edge already present (partner connect, or a raced rewiring): the
    // paired disconnects are already out, so keep m by marking only.
    if (!graph_.is_marked(at, y)) {
      graph_.set_mark(at, y, true);
      ++counters_.connect_on_existing;
    }
    return;
  }
  graph_.add_edge(at, y);
  graph_.set_mark(at, y, true);
}

void Simulator::on_disconnect(NodeId at, NodeId b) {
  if (!graph_.remove_edge(at, b)) return;
  if (graph_.degree(at) == 0 || graph_.degree(b) == 0)
    ++counters_.isolation_events;
}

TraceRecord Simulator::snapshot(double at_time) const {
  TraceRecord rec;
  rec.time = at_time;
  rec.max_degree = graph_.max_degree();
  rec.component_count = static_cast<int>(graph_.connected_components().size());
  rec.rewired_fraction =
      graph_.edge_count() > 0
          ? static_cast<double>(graph_.marked_edge_count()) / graph_.edge_count()
          : 1.0;
  rec.messages = counters_.messages_sent;
  std::vector<int> degrees;
  degrees.reserve(static_cast<size_t>(graph_.node_count()));
  for (NodeId v = 1; v <= graph_.node_count(); ++v)
    degrees.push_back(graph_.degree(v));
  try {
    FitResult fit = fit_power_law(degrees);
    rec.gamma_f = fit.gamma_f;
    rec.ks_D = fit.ks_D;
    rec.d_min_fit = fit.d_min_fit;
  } catch (const GuardError&) {
    rec.gamma_f = rec.ks_D = rec.d_min_fit =
        std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

CycleResult Simulator::run_cycle(const SimConfig& config) {
  config.validate();
  CycleResult result;
  Counters before = counters_;
  TargetSpec spec(config.gamma, graph_.node_count());
  spec_ = &spec;
  config_ = &config;
  delay_ = config.effective_delay(graph_.node_count());
  double t_end = clock_ + config.effective_max_time(graph_.edge_count(),
                                                    graph_.max_degree(), delay_);
  double next_snap = config.snapshot_every > 0.0
                         ? clock_ + config.snapshot_every
                         : std::numeric_limits<double>::infinity();

  queue_ = {};
  pending_.clear();
  seq_ = 0;
  for (NodeId v = 1; v <= graph_.node_count(); ++v) schedule_wake(v);

  while (graph_.marked_edge_count() < graph_.edge_count()) {
    if (queue_.empty()) break;
    Event ev = queue_.top();
    if (ev.time > t_end) break;
    queue_.pop();
    while (ev.time >= next_snap) {
      result.trace.push_back(snapshot(next_snap));
      next_snap += config.snapshot_every;
    }
    clock_ = ev.time;
    switch (ev.kind) {
      case EventKind::Wake: on_wake(ev.node); break;
      case EventKind::Walk: on_walk(ev.node, ev.walk); break;
      case EventKind::Connect: on_connect(ev.node, ev.other); break;
      case EventKind::Disconnect: on_disconnect(ev.node, ev.other); break;
    }
  }
  result.completed = graph_.marked_edge_count() >= graph_.edge_count();
  if (!result.completed) clock_ = t_end;
  queue_ = {};
  result.trace.push_back(snapshot(clock_));

  // Per-cycle counter deltas.
  Counters delta = counters_;
  delta.messages_sent -= before.messages_sent;
  delta.walk_messages -= before.walk_messages;
  delta.self_loop_hops -= before.self_loop_hops;
  delta.walks_started -= before.walks_started;
  delta.walks_aborted -= before.walks_aborted;
  delta.walks_died -= before.walks_died;
  delta.rewirings -= before.rewirings;
  delta.kept_in_place -= before.kept_in_place;
  delta.connect_on_existing -= before.connect_on_existing;
  delta.endpoint_target_cases -= before.endpoint_target_cases;
  delta.isolation_events -= before.isolation_events;
  result.counters = delta;
  spec_ = nullptr;
  config_ = nullptr;
  return result;
}

std::vector<CycleResult> Simulator::run_multi_cycle(
    const std::vector<SimConfig>& configs) {
  std::vector<CycleResult> results;
  for (const auto& config : configs) {
    graph_.clear_marks();
    results.push_back(run_cycle(config));
  }
  return results;
}

}  // namespace rewire
