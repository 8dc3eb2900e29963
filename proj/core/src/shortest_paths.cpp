#include "ftp/shortest_paths.hpp"

#include <algorithm>
#include <queue>

namespace ftp {

std::vector<int> DistanceTable::path_to(int v) const {
  std::vector<int> path;
  if (!reached(v)) return path;
  while (v != source) {
    path.push_back(pred_edge[v]);
    v = pred_vertex[v];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

DistanceTable dijkstra(int n, std::span<const WeightedArc> arcs, bool directed, int source,
                       std::span<const char> enabled) {
  struct Incidence {
    int arc;
    int to;
  };
  std::vector<std::vector<Incidence>> adj(n);
  for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
    if (!enabled.empty() && !enabled[i]) continue;
    adj[arcs[i].tail].push_back({i, arcs[i].head});
    if (!directed) adj[arcs[i].head].push_back({i, arcs[i].tail});
  }

  DistanceTable table;
  table.source = source;
  table.dist.assign(n, kInfinity);
  table.pred_edge.assign(n, -1);
  table.pred_vertex.assign(n, -1);
  table.dist[source] = 0;

  using Item = std::pair<Weight, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, v] = heap.top();
    heap.pop();
    if (d != table.dist[v]) continue;
    for (const Incidence& inc : adj[v]) {
      const Weight nd = d + arcs[inc.arc].weight;
      if (nd < table.dist[inc.to]) {
        table.dist[inc.to] = nd;
        table.pred_edge[inc.to] = inc.arc;
        table.pred_vertex[inc.to] = v;
        heap.emplace(nd, inc.to);
      }
    }
  }
  return table;
}

namespace {

std::vector<WeightedArc> arcs_of(const FtpInstance& instance) {
  std::vector<WeightedArc> arcs;
  arcs.reserve(instance.edges.size());
  for (const Edge& e : instance.edges) arcs.push_back({e.tail, e.head, e.weight});
  return arcs;
}

}  // namespace

DistanceTable shortest_distances(const FtpInstance& instance, int source, const EdgeFilter& filter) {
  const auto arcs = arcs_of(instance);
  std::vector<char> enabled(arcs.size());
  for (const Edge& e : instance.edges) enabled[e.id] = filter(e) ? 1 : 0;
  return dijkstra(instance.n, arcs, instance.directed, source, enabled);
}

Weight st_distance(const FtpInstance& instance, const EdgeFilter& filter) {
  return shortest_distances(instance, instance.s, filter).dist[instance.t];
}

}  // namespace ftp
