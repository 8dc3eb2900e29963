#include "ftp/flow.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace ftp {

int FlowNetwork::add_node() {
  balance_.push_back(0);
  return node_count() - 1;
}

int FlowNetwork::add_arc(int tail, int head, Weight capacity, Weight cost, int origin) {
  arcs_.push_back(FlowArc{tail, head, capacity, cost, origin});
  return arc_count() - 1;
}

void FlowNetwork::validate() const {
  for (const FlowArc& a : arcs_) {
    if (a.tail < 0 || a.tail >= node_count() || a.head < 0 || a.head >= node_count()) {
      throw std::invalid_argument("flow arc endpoint out of range");
    }
    if (a.capacity < 0) throw std::invalid_argument("negative capacity");
    if (a.cost < 0) throw std::invalid_argument("negative cost");
  }
  if (std::accumulate(balance_.begin(), balance_.end(), Weight{0}) != 0) {
    throw std::invalid_argument("balances do not sum to zero");
  }
}

namespace {

// Residual graph with paired arcs: 2i is arc i, 2i+1 its reverse.
struct Residual {
  struct Arc {
    int to;
    Weight cap;
    Weight cost;
  };

  explicit Residual(const FlowNetwork& net) : out(net.node_count()) {
    arcs.reserve(2 * net.arc_count());
    for (const FlowArc& a : net.arcs()) {
      out[a.tail].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({a.head, a.capacity, a.cost});
      out[a.head].push_back(static_cast<int>(arcs.size()));
      arcs.push_back({a.tail, 0, -a.cost});
    }
  }

  void push(int id, Weight amount) {
    arcs[id].cap -= amount;
    arcs[id ^ 1].cap += amount;
  }

  FlowResult result(const FlowNetwork& net) const {
    FlowResult r;
    r.arc_flow.resize(net.arc_count());
    for (int i = 0; i < net.arc_count(); ++i) {
      r.arc_flow[i] = arcs[2 * i + 1].cap;
      r.cost += r.arc_flow[i] * net.arc(i).cost;
    }
    return r;
  }

  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out;
};

class Dinic {
 public:
  Dinic(Residual& g, int source, int sink)
      : g_(g), source_(source), sink_(sink), level_(g.out.size()), it_(g.out.size()) {}

  Weight run(Weight limit) {
    Weight total = 0;
    while (total < limit && bfs()) {
      std::fill(it_.begin(), it_.end(), 0);
      while (total < limit) {
        const Weight pushed = dfs(source_, limit - total);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

 private:
  bool bfs() {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source_] = 0;
    queue.push(source_);
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop();
      for (int id : g_.out[v]) {
        const auto& a = g_.arcs[id];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[v] + 1;
          queue.push(a.to);
        }
      }
    }
    return level_[sink_] >= 0;
  }

  Weight dfs(int v, Weight budget) {
    if (v == sink_) return budget;
    for (auto& i = it_[v]; i < g_.out[v].size(); ++i) {
      const int id = g_.out[v][i];
      const auto& a = g_.arcs[id];
      if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
      const Weight pushed = dfs(a.to, std::min(budget, a.cap));
      if (pushed > 0) {
        g_.push(id, pushed);
        return pushed;
      }
    }
    return 0;
  }

  Residual& g_;
  int source_;
  int sink_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net, int source, int sink, Weight limit) {
  Residual g(net);
  FlowResult r;
  Weight value = 0;
  if (source != sink) value = Dinic(g, source, sink).run(limit);
  r = g.result(net);
  r.value = value;
  return r;
}

std::optional<FlowResult> min_cost_flow(const FlowNetwork& net, int source, int sink,
                                        Weight target) {
  if (target < 0) throw std::invalid_argument("negative flow target");
  Residual g(net);
  const int n = net.node_count();
  std::vector<Weight> potential(n, 0);
  std::vector<Weight> dist(n);
  std::vector<int> pred(n);
  std::vector<char> settled(n);
  Weight routed = 0;

  while (routed < target) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    std::fill(pred.begin(), pred.end(), -1);
    std::fill(settled.begin(), settled.end(), 0);
    using Item = std::pair<Weight, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0;
    heap.emplace(0, source);
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (settled[v] || d != dist[v]) continue;
      settled[v] = 1;
      for (int id : g.out[v]) {
        const auto& a = g.arcs[id];
        if (a.cap <= 0 || settled[a.to]) continue;
        const Weight nd = d + a.cost + potential[v] - potential[a.to];
        // Equal-cost ties go to the lower arc id so results are reproducible.
        if (nd < dist[a.to] || (nd == dist[a.to] && id < pred[a.to])) {
          const bool improved = nd < dist[a.to];
          dist[a.to] = nd;
          pred[a.to] = id;
          if (improved) heap.emplace(nd, a.to);
        }
      }
    }
    if (dist[sink] >= kInfinity) return std::nullopt;
    for (int v = 0; v < n; ++v) {
      if (dist[v] < kInfinity) potential[v] += dist[v];
    }
    Weight amount = target - routed;
    for (int v = sink; v != source; v = g.arcs[pred[v] ^ 1].to) {
      amount = std::min(amount, g.arcs[pred[v]].cap);
    }
    for (int v = sink; v != source; v = g.arcs[pred[v] ^ 1].to) g.push(pred[v], amount);
    routed += amount;
  }

  FlowResult r = g.result(net);
  r.value = routed;
  return r;
}

std::optional<std::vector<Weight>> route_balances(const FlowNetwork& net) {
  FlowNetwork ext = net;
  const int super_source = ext.add_node();
  const int super_sink = ext.add_node();
  Weight supply = 0;
  for (int v = 0; v < net.node_count(); ++v) {
    const Weight b = net.balances()[v];
    if (b > 0) {
      ext.add_arc(super_source, v, b);
      supply += b;
    } else if (b < 0) {
      ext.add_arc(v, super_sink, -b);
    }
  }
  FlowResult r = max_flow(ext, super_source, super_sink);
  if (r.value != supply) return std::nullopt;
  r.arc_flow.resize(net.arc_count());
  return r.arc_flow;
}

bool balances_feasible(const FlowNetwork& net) { return route_balances(net).has_value(); }

std::vector<std::vector<int>> decompose_unit_paths(const FlowNetwork& net,
                                                   std::vector<Weight> arc_flow, int source,
                                                   int sink, Weight units) {
  const int n = net.node_count();
  std::vector<std::vector<int>> out_arcs(n);
  for (int i = 0; i < net.arc_count(); ++i) {
    if (arc_flow[i] > 0) out_arcs[net.arc(i).tail].push_back(i);
  }
  std::vector<std::size_t> cursor(n, 0);
  auto next_arc = [&](int v) -> int {
    auto& c = cursor[v];
    while (c < out_arcs[v].size() && arc_flow[out_arcs[v][c]] <= 0) ++c;
    return c < out_arcs[v].size() ? out_arcs[v][c] : -1;
  };

  std::vector<std::vector<int>> paths;
  std::vector<int> position(n, -1);
  for (Weight unit = 0; unit < units; ++unit) {
    std::vector<int> nodes{source};
    std::vector<int> arcs;
    position[source] = 0;
    while (nodes.back() != sink) {
      const int arc = next_arc(nodes.back());
      if (arc < 0) throw std::logic_error("flow decomposition ran out of flow");
      const int head = net.arc(arc).head;
      if (position[head] >= 0) {
        // Cycle: cancel one unit around it and rewind the walk.
        const int start = position[head];
        --arc_flow[arc];
        for (std::size_t j = start; j < arcs.size(); ++j) --arc_flow[arcs[j]];
        for (std::size_t j = start + 1; j < nodes.size(); ++j) position[nodes[j]] = -1;
        nodes.resize(start + 1);
        arcs.resize(start);
        continue;
      }
      position[head] = static_cast<int>(nodes.size());
      nodes.push_back(head);
      arcs.push_back(arc);
    }
    for (int arc : arcs) --arc_flow[arc];
    for (int v : nodes) position[v] = -1;
    paths.push_back(std::move(arcs));
  }
  return paths;
}

}  // namespace ftp
