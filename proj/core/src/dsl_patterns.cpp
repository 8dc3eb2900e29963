#include "ftp/dsl_patterns.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <set>

#include "ftp/flow.hpp"

namespace ftp {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

EdgeList prufer_decode(const std::vector<int>& seq, int nodes) {
  std::vector<int> degree(nodes, 1);
  for (int v : seq) ++degree[v];
  EdgeList edges;
  edges.reserve(nodes - 1);
  for (int v : seq) {
    int leaf = 0;
    while (degree[leaf] != 1) ++leaf;
    edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
    --degree[leaf];
    --degree[v];
  }
  int u = -1;
  for (int i = 0; i < nodes; ++i) {
    if (degree[i] == 1) {
      if (u < 0) {
        u = i;
      } else {
        edges.emplace_back(u, i);
      }
    }
  }
  return edges;
}

// Lexicographically smallest sorted edge list over all relabelings of the
// Steiner nodes.
EdgeList canonical(const EdgeList& edges, int terminals, int steiner) {
  std::vector<int> perm(steiner);
  std::iota(perm.begin(), perm.end(), terminals);
  EdgeList best;
  EdgeList cur(edges.size());
  do {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto map = [&](int v) { return v < terminals ? v : perm[v - terminals]; };
      const int a = map(edges[i].first);
      const int b = map(edges[i].second);
      cur[i] = {std::min(a, b), std::max(a, b)};
    }
    std::sort(cur.begin(), cur.end());
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<TreeShape> build_tree_shapes(int terminals) {
  std::vector<TreeShape> shapes;
  if (terminals < 2) return shapes;
  for (int steiner = 0; steiner <= terminals - 2; ++steiner) {
    const int nodes = terminals + steiner;
    if (nodes == 2) {
      shapes.push_back({terminals, 0, {{0, 1}}});
      continue;
    }
    const int length = nodes - 2;
    std::set<EdgeList> seen;
    std::vector<int> seq(length);
    std::vector<int> count(nodes, 0);
    // Steiner node degree = occurrences + 1 >= 3.
    auto deficit = [&] {
      int d = 0;
      for (int v = terminals; v < nodes; ++v) d += std::max(0, 2 - count[v]);
      return d;
    };
    auto rec = [&](auto&& self, int pos) -> void {
      if (deficit() > length - pos) return;
      if (pos == length) {
        seen.insert(canonical(prufer_decode(seq, nodes), terminals, steiner));
        return;
      }
      for (int v = 0; v < nodes; ++v) {
        seq[pos] = v;
        ++count[v];
        self(self, pos + 1);
        --count[v];
      }
    };
    rec(rec, 0);
    for (const auto& edges : seen) shapes.push_back({terminals, steiner, edges});
  }
  return shapes;
}

// Restricted-growth enumeration of set partitions whose blocks all have at
// least two elements.
void for_each_partition(int r, const std::function<bool(const std::vector<std::vector<int>>&)>& fn) {
  std::vector<std::vector<int>> blocks;
  bool stop = false;
  auto rec = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i == r) {
      for (const auto& b : blocks) {
        if (b.size() < 2) return;
      }
      if (!fn(blocks)) stop = true;
      return;
    }
    // Prune: singleton blocks that can no longer grow.
    int singletons = 0;
    for (const auto& b : blocks) singletons += b.size() == 1 ? 1 : 0;
    if (singletons > r - i) return;
    for (std::size_t b = 0; b < blocks.size() && !stop; ++b) {
      blocks[b].push_back(i);
      self(self, i + 1);
      blocks[b].pop_back();
    }
    if (stop) return;
    blocks.push_back({i});
    self(self, i + 1);
    blocks.pop_back();
  };
  rec(rec, 0);
}

}  // namespace

const std::vector<TreeShape>& tree_shapes(int terminals) {
  static std::mutex mutex;
  static std::map<int, std::vector<TreeShape>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(terminals);
  if (it == cache.end()) it = cache.emplace(terminals, build_tree_shapes(terminals)).first;
  return it->second;
}

void enumerate_patterns(std::span<const Weight> balances, int pair_count, bool oriented,
                        const std::function<bool(const ForestPattern&)>& visit) {
  const int r = static_cast<int>(balances.size());
  const int max_steiner = std::max(0, 2 * pair_count - 2);

  for_each_partition(r, [&](const std::vector<std::vector<int>>& blocks) {
    std::vector<const std::vector<TreeShape>*> options;
    for (const auto& b : blocks) options.push_back(&tree_shapes(static_cast<int>(b.size())));
    std::vector<std::size_t> pick(blocks.size(), 0);

    auto emit = [&] {
      ForestPattern p;
      p.terminal_count = r;
      p.oriented = oriented;
      p.balance.assign(balances.begin(), balances.end());
      int next_steiner = r;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const TreeShape& shape = (*options[b])[pick[b]];
        auto map = [&](int v) {
          return v < shape.terminals ? blocks[b][v] : next_steiner + (v - shape.terminals);
        };
        for (auto [u, v] : shape.edges) {
          const int a = map(u);
          const int c = map(v);
          p.edges.emplace_back(std::min(a, c), std::max(a, c));
        }
        next_steiner += shape.steiner;
      }
      p.steiner_count = next_steiner - r;
      if (p.steiner_count > max_steiner) return true;
      if (!oriented) return visit(p);
      const EdgeList base = p.edges;
      const std::size_t e = base.size();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e); ++mask) {
        for (std::size_t i = 0; i < e; ++i) {
          p.edges[i] = (mask >> i) & 1 ? std::make_pair(base[i].second, base[i].first) : base[i];
        }
        if (!visit(p)) return false;
      }
      return true;
    };

    // Cartesian product over the blocks' shape lists.
    while (true) {
      if (!emit()) return false;
      std::size_t b = 0;
      while (b < blocks.size() && ++pick[b] == options[b]->size()) pick[b++] = 0;
      if (b == blocks.size()) break;
    }
    return true;
  });
}

bool pattern_feasible(const ForestPattern& pattern) {
  FlowNetwork net(pattern.node_count());
  Weight total = 0;
  for (int i = 0; i < pattern.terminal_count; ++i) {
    net.set_balance(i, pattern.balance[i]);
    total += pattern.balance[i] > 0 ? pattern.balance[i] : 0;
  }
  for (auto [u, v] : pattern.edges) {
    net.add_arc(u, v, total);
    if (!pattern.oriented) net.add_arc(v, u, total);
  }
  if (std::accumulate(pattern.balance.begin(), pattern.balance.end(), Weight{0}) != 0) return false;
  return balances_feasible(net);
}

std::optional<Embedding> embed_pattern(const ForestPattern& pattern,
                                       std::span<const int> terminal_vertices,
                                       const MetricClosure& closure) {
  const int nodes = pattern.node_count();
  const int n = closure.size();
  struct Link {
    int to;
    bool outward;  // edge points from this node to `to`
  };
  std::vector<std::vector<Link>> adj(nodes);
  for (auto [u, v] : pattern.edges) {
    adj[u].push_back({v, true});
    adj[v].push_back({u, !pattern.oriented});
  }
  auto pinned = [&](int node) { return node < pattern.terminal_count; };

  // cost[node][v]: cheapest placement of node's subtree with node at v.
  std::vector<std::vector<Weight>> cost(nodes, std::vector<Weight>(n, kInfinity));
  // child_choice[c][x]: best vertex for child c when its parent sits at x.
  std::vector<std::vector<int>> child_choice(nodes);
  std::vector<int> parent(nodes, -1);
  std::vector<char> edge_out(nodes, 0);  // edge parent->child is oriented outward from parent
  std::vector<char> visited(nodes, 0);
  Embedding result;
  result.assignment.assign(nodes, -1);

  for (int start = 0; start < nodes; ++start) {
    if (visited[start]) continue;
    // Root components at a terminal where possible.
    int root = start;
    {
      std::vector<int> stack{start};
      std::vector<int> members;
      visited[start] = 1;
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        members.push_back(v);
        for (const Link& l : adj[v]) {
          if (!visited[l.to]) {
            visited[l.to] = 1;
            stack.push_back(l.to);
          }
        }
      }
      for (int v : members) {
        if (pinned(v)) {
          root = v;
          break;
        }
      }
    }
    // Preorder from the root.
    std::vector<int> order{root};
    parent[root] = -1;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int v = order[i];
      for (const Link& l : adj[v]) {
        if (l.to == parent[v] && parent[v] >= 0) continue;
        if (l.to == root) continue;
        parent[l.to] = v;
        edge_out[l.to] = l.outward ? 1 : 0;
        order.push_back(l.to);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      auto& cv = cost[v];
      for (int x = 0; x < n; ++x) {
        if (pinned(v) && x != terminal_vertices[v]) continue;
        cv[x] = 0;
      }
      for (const Link& l : adj[v]) {
        const int c = l.to;
        if (parent[c] != v || c == root) continue;
        auto& choice = child_choice[c];
        choice.assign(n, -1);
        for (int x = 0; x < n; ++x) {
          if (cv[x] >= kInfinity) continue;
          Weight best = kInfinity;
          for (int y = 0; y < n; ++y) {
            if (cost[c][y] >= kInfinity) continue;
            const Weight w = edge_out[c] ? closure.weight(x, y) : closure.weight(y, x);
            const Weight total = saturating_add(cost[c][y], w);
            if (total < best) {
              best = total;
              choice[x] = y;
            }
          }
          cv[x] = saturating_add(cv[x], best);
        }
      }
    }
    int best_root = -1;
    for (int x = 0; x < n; ++x) {
      if (cost[root][x] < kInfinity && (best_root < 0 || cost[root][x] < cost[root][best_root])) {
        best_root = x;
      }
    }
    if (best_root < 0) return std::nullopt;
    result.cost += cost[root][best_root];
    result.assignment[root] = best_root;
    for (int v : order) {
      if (v == root) continue;
      result.assignment[v] = child_choice[v][result.assignment[parent[v]]];
    }
  }
  return result;
}

}  // namespace ftp
