#pragma once

#include <functional>
#include <vector>

#include "ftp/flow.hpp"
#include "ftp/instance.hpp"

namespace ftp {

struct ArcTerms {
  Weight capacity = 0;
  Weight cost = 0;
};

// Flow network over the instance's vertices. Directed edge i becomes arc i;
// undirected edge i becomes arcs 2i (tail->head) and 2i+1 (head->tail), both
// with the same capacity and cost. Every arc records its edge id as origin.
FlowNetwork ftp_network(const FtpInstance& instance,
                        const std::function<ArcTerms(const Edge&)>& terms);

// Removes flow running both ways over one undirected edge. No-op for
// directed instances. Recomputes the total cost.
void cancel_opposite_flow(const FtpInstance& instance, const FlowNetwork& net, FlowResult& flow);

// Net flow carried by each edge (absolute value for undirected edges).
std::vector<Weight> edge_flow(const FtpInstance& instance, const FlowNetwork& net,
                              const FlowResult& flow);

struct Relaxation {
  Weight cost = kInfinity;  // C; kInfinity when no (k+1)-flow exists
  FlowNetwork network;
  FlowResult flow;          // valid only when cost is finite
  EdgeSet support;          // edges carrying flow

  bool feasible() const { return cost < kInfinity; }
};

// Minimum cost of a (k+1)-flow from s to t where safe edges have capacity
// k+1, vulnerable edges capacity 1, and each unit pays the edge weight.
Relaxation relaxation_cost(const FtpInstance& instance);

}  // namespace ftp
