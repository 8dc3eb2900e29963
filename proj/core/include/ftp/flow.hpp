#pragma once

#include <optional>
#include <vector>

#include "ftp/instance.hpp"

namespace ftp {

struct FlowArc {
  int tail = 0;
  int head = 0;
  Weight capacity = 0;
  Weight cost = 0;
  int origin = -1;  // id of the graph edge this arc models, if any
};

class FlowNetwork {
 public:
  FlowNetwork() = default;
  explicit FlowNetwork(int nodes) : balance_(nodes, 0) {}

  int add_node();
  int add_arc(int tail, int head, Weight capacity, Weight cost = 0, int origin = -1);

  // Positive balance is supply, negative is demand.
  void set_balance(int node, Weight balance) { balance_[node] = balance; }
  void add_balance(int node, Weight delta) { balance_[node] += delta; }

  int node_count() const { return static_cast<int>(balance_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<FlowArc>& arcs() const { return arcs_; }
  const FlowArc& arc(int id) const { return arcs_[id]; }
  const std::vector<Weight>& balances() const { return balance_; }

  void set_capacity(int arc, Weight capacity) { arcs_[arc].capacity = capacity; }
  void set_cost(int arc, Weight cost) { arcs_[arc].cost = cost; }

  // Throws std::invalid_argument on negative capacities or costs, or on
  // balances that do not sum to zero.
  void validate() const;

 private:
  std::vector<FlowArc> arcs_;
  std::vector<Weight> balance_;
};

struct FlowResult {
  Weight value = 0;
  Weight cost = 0;
  std::vector<Weight> arc_flow;
};

// Maximum integral source-sink flow (Dinic), stopping early once `limit`
// units are routed.
FlowResult max_flow(const FlowNetwork& net, int source, int sink, Weight limit = kInfinity);

// Minimum-cost flow of exactly `target` units by successive shortest paths
// with node potentials. Returns nullopt when `target` units cannot be routed.
std::optional<FlowResult> min_cost_flow(const FlowNetwork& net, int source, int sink,
                                        Weight target);

// True iff the node balances can be routed over the arcs.
bool balances_feasible(const FlowNetwork& net);

// Same, returning the per-arc flow of one feasible routing.
std::optional<std::vector<Weight>> route_balances(const FlowNetwork& net);

// Splits `units` units of an integral source-sink flow into simple unit paths
// (arc id sequences). Flow circulating on cycles is discarded. `arc_flow` is
// consumed.
std::vector<std::vector<int>> decompose_unit_paths(const FlowNetwork& net,
                                                   std::vector<Weight> arc_flow, int source,
                                                   int sink, Weight units);

}  // namespace ftp
