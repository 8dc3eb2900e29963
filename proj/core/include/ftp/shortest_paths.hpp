#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ftp/instance.hpp"

namespace ftp {

// A weighted arc list shared by the FTP and DSL graph views. The index of an
// arc in the list is its id.
struct WeightedArc {
  int tail = 0;
  int head = 0;
  Weight weight = 0;
};

struct DistanceTable {
  int source = 0;
  std::vector<Weight> dist;       // kInfinity when unreachable
  std::vector<int> pred_edge;     // -1 for the source and unreached vertices
  std::vector<int> pred_vertex;   // -1 for the source and unreached vertices

  bool reached(int v) const { return dist[v] < kInfinity; }

  // Arc ids of the recorded shortest path from source to v, in travel order.
  // Empty when v is the source or unreachable.
  std::vector<int> path_to(int v) const;
};

// Single-source shortest paths over arcs with non-negative weights. Undirected
// graphs traverse each arc in both directions. `enabled`, when non-empty,
// masks arcs out of the search.
DistanceTable dijkstra(int n, std::span<const WeightedArc> arcs, bool directed, int source,
                       std::span<const char> enabled = {});

using EdgeFilter = std::function<bool(const Edge&)>;

inline bool any_edge(const Edge&) { return true; }
inline bool safe_edge(const Edge& e) { return e.safe(); }

DistanceTable shortest_distances(const FtpInstance& instance, int source,
                                 const EdgeFilter& filter = any_edge);

// Shortest s-t distance of the instance under the filter.
Weight st_distance(const FtpInstance& instance, const EdgeFilter& filter = any_edge);

}  // namespace ftp
