#include "ftp/relaxation.hpp"

#include <algorithm>

namespace ftp {

FlowNetwork ftp_network(const FtpInstance& instance,
                        const std::function<ArcTerms(const Edge&)>& terms) {
  FlowNetwork net(instance.n);
  for (const Edge& e : instance.edges) {
    const ArcTerms at = terms(e);
    net.add_arc(e.tail, e.head, at.capacity, at.cost, e.id);
    if (!instance.directed) net.add_arc(e.head, e.tail, at.capacity, at.cost, e.id);
  }
  return net;
}

void cancel_opposite_flow(const FtpInstance& instance, const FlowNetwork& net, FlowResult& flow) {
  if (instance.directed) return;
  for (int i = 0; i < instance.edge_count(); ++i) {
    Weight& forward = flow.arc_flow[2 * i];
    Weight& backward = flow.arc_flow[2 * i + 1];
    const Weight common = std::min(forward, backward);
    forward -= common;
    backward -= common;
  }
  flow.cost = 0;
  for (int a = 0; a < net.arc_count(); ++a) flow.cost += flow.arc_flow[a] * net.arc(a).cost;
}

std::vector<Weight> edge_flow(const FtpInstance& instance, const FlowNetwork& net,
                              const FlowResult& flow) {
  std::vector<Weight> out(instance.edge_count(), 0);
  if (instance.directed) {
    for (int a = 0; a < net.arc_count(); ++a) out[net.arc(a).origin] += flow.arc_flow[a];
  } else {
    for (int i = 0; i < instance.edge_count(); ++i) {
      const Weight net_flow = flow.arc_flow[2 * i] - flow.arc_flow[2 * i + 1];
      out[i] = net_flow < 0 ? -net_flow : net_flow;
    }
  }
  return out;
}

Relaxation relaxation_cost(const FtpInstance& instance) {
  const Weight units = instance.k + 1;
  Relaxation r;
  r.network = ftp_network(instance, [&](const Edge& e) {
    return ArcTerms{e.safe() ? units : 1, e.weight};
  });
  auto flow = min_cost_flow(r.network, instance.s, instance.t, units);
  if (!flow) return r;
  cancel_opposite_flow(instance, r.network, *flow);
  r.cost = flow->cost;
  const auto per_edge = edge_flow(instance, r.network, *flow);
  std::vector<int> support;
  for (int i = 0; i < instance.edge_count(); ++i) {
    if (per_edge[i] > 0) support.push_back(i);
  }
  r.support = EdgeSet(std::move(support));
  r.flow = std::move(*flow);
  return r;
}

}  // namespace ftp
