#include "ftp/dsl.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "ftp/dsl_patterns.hpp"
#include "ftp/flow.hpp"
#include "text_reader.hpp"

namespace ftp {

void DslInstance::validate() const {
  if (n < 1) throw InvalidInstance("linkage instance needs at least one vertex");
  if (sources.size() != targets.size()) {
    throw InvalidInstance("source and target multisets differ in size");
  }
  auto in_range = [&](int v) { return v >= 0 && v < n; };
  for (int v : sources) {
    if (!in_range(v)) throw InvalidInstance("source vertex out of range");
  }
  for (int v : targets) {
    if (!in_range(v)) throw InvalidInstance("target vertex out of range");
  }
  for (const WeightedArc& a : arcs) {
    if (!in_range(a.tail) || !in_range(a.head)) throw InvalidInstance("arc endpoint out of range");
    if (a.weight < 0) throw InvalidInstance("negative arc weight");
  }
}

MetricClosure::MetricClosure(int n, bool directed, std::span<const WeightedArc> arcs)
    : n_(n),
      directed_(directed),
      dist_(static_cast<std::size_t>(n) * n, kInfinity),
      rdist_(dist_.size(), kInfinity) {
  tables_.reserve(n);
  for (int u = 0; u < n; ++u) {
    tables_.push_back(dijkstra(n, arcs, directed, u));
    std::copy(tables_.back().dist.begin(), tables_.back().dist.end(),
              dist_.begin() + static_cast<std::ptrdiff_t>(u) * n);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) rdist_[static_cast<std::size_t>(v) * n + u] = weight(u, v);
  }
}

MetricClosure metric_closure(const DslInstance& instance) {
  return MetricClosure(instance.n, instance.directed, instance.arcs);
}

std::pair<std::vector<int>, std::vector<int>> cancel_common(std::span<const int> sources,
                                                            std::span<const int> targets) {
  std::map<int, int> net;
  for (int v : sources) ++net[v];
  for (int v : targets) --net[v];
  std::pair<std::vector<int>, std::vector<int>> out;
  for (auto [v, c] : net) {
    for (int i = 0; i < c; ++i) out.first.push_back(v);
    for (int i = 0; i < -c; ++i) out.second.push_back(v);
  }
  return out;
}

namespace {

FlowNetwork linkage_network(const DslInstance& graph, std::span<const int> chosen,
                            std::span<const int> sources, std::span<const int> targets) {
  FlowNetwork net(graph.n);
  const auto cap = static_cast<Weight>(sources.size());
  for (int id : chosen) {
    const WeightedArc& a = graph.arcs[id];
    net.add_arc(a.tail, a.head, cap, 0, id);
    if (!graph.directed) net.add_arc(a.head, a.tail, cap, 0, id);
  }
  for (int v : sources) net.add_balance(v, 1);
  for (int v : targets) net.add_balance(v, -1);
  return net;
}

// Distinct vertices with non-zero net balance, sorted, with their balances.
struct Terminals {
  std::vector<int> vertex;
  std::vector<Weight> balance;
  int pairs = 0;  // occurrence pairs left after cancellation

  int size() const { return static_cast<int>(vertex.size()); }

  Weight mask_balance(std::uint32_t mask) const {
    Weight b = 0;
    for (int i = 0; i < size(); ++i) {
      if (mask >> i & 1) b += balance[i];
    }
    return b;
  }
};

Terminals terminals_of(const DslInstance& instance) {
  std::map<int, Weight> net;
  for (int v : instance.sources) ++net[v];
  for (int v : instance.targets) --net[v];
  Terminals t;
  for (auto [v, b] : net) {
    if (b == 0) continue;
    t.vertex.push_back(v);
    t.balance.push_back(b);
    if (b > 0) t.pairs += static_cast<int>(b);
  }
  return t;
}

struct ClosureArc {
  int from;
  int to;
};

struct RouteResult {
  Weight cost = kInfinity;
  std::vector<ClosureArc> arcs;
};

// Minimum over zero-balance terminal subsets partitioning all terminals.
RouteResult combine_blocks(const Terminals& terms, const std::vector<Weight>& block_cost,
                           const std::function<void(std::uint32_t, std::vector<ClosureArc>&)>& emit) {
  const std::uint32_t full = (std::uint32_t{1} << terms.size()) - 1;
  std::vector<Weight> best(full + 1, kInfinity);
  std::vector<std::uint32_t> pick(full + 1, 0);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    // Blocks containing the lowest member of `mask`.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      const std::uint32_t block = sub | low;
      if (block_cost[block] < kInfinity && best[mask ^ block] < kInfinity) {
        const Weight cand = block_cost[block] + best[mask ^ block];
        if (cand < best[mask]) {
          best[mask] = cand;
          pick[mask] = block;
        }
      }
      if (sub == 0) break;
    }
  }
  RouteResult r;
  r.cost = best[full];
  if (r.cost >= kInfinity) return r;
  for (std::uint32_t mask = full; mask != 0; mask ^= pick[mask]) emit(pick[mask], r.arcs);
  return r;
}

RouteResult solve_by_patterns(const Terminals& terms, bool directed, const MetricClosure& closure) {
  const int r = terms.size();
  const std::uint32_t full = (std::uint32_t{1} << r) - 1;
  std::vector<Weight> block_cost(full + 1, kInfinity);
  std::vector<std::vector<ClosureArc>> block_arcs(full + 1);

  for (std::uint32_t block = 1; block <= full; ++block) {
    if (std::popcount(block) < 2 || terms.mask_balance(block) != 0) continue;
    std::vector<int> members;
    for (int i = 0; i < r; ++i) {
      if (block >> i & 1) members.push_back(i);
    }
    const int b = static_cast<int>(members.size());
    ForestPattern pattern;
    pattern.terminal_count = b;
    pattern.oriented = directed;
    std::vector<int> pinned(b);
    for (int i = 0; i < b; ++i) {
      pattern.balance.push_back(terms.balance[members[i]]);
      pinned[i] = terms.vertex[members[i]];
    }

    for (const TreeShape& shape : tree_shapes(b)) {
      // Orient every edge along its forced flow direction; edges that would
      // carry no flow make the shape redundant.
      const int nodes = shape.terminals + shape.steiner;
      std::vector<std::vector<int>> adj(nodes);
      for (auto [u, v] : shape.edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
      std::vector<int> parent(nodes, -1);
      std::vector<int> order{0};
      std::vector<char> seen(nodes, 0);
      seen[0] = 1;
      for (std::size_t i = 0; i < order.size(); ++i) {
        for (int w : adj[order[i]]) {
          if (!seen[w]) {
            seen[w] = 1;
            parent[w] = order[i];
            order.push_back(w);
          }
        }
      }
      std::vector<Weight> below(nodes, 0);
      for (int v = 0; v < b; ++v) below[v] = pattern.balance[v];
      bool redundant = false;
      pattern.edges.clear();
      pattern.steiner_count = shape.steiner;
      for (auto it = order.rbegin(); it != order.rend() && *it != 0; ++it) {
        const int v = *it;
        if (below[v] == 0) {
          redundant = true;
          break;
        }
        if (below[v] > 0) {
          pattern.edges.emplace_back(v, parent[v]);
        } else {
          pattern.edges.emplace_back(parent[v], v);
        }
        below[parent[v]] += below[v];
      }
      if (redundant) continue;
      auto embedding = embed_pattern(pattern, pinned, closure);
      if (!embedding || embedding->cost >= block_cost[block]) continue;
      block_cost[block] = embedding->cost;
      auto& arcs = block_arcs[block];
      arcs.clear();
      for (auto [u, v] : pattern.edges) {
        const int x = embedding->assignment[u];
        const int y = embedding->assignment[v];
        if (x != y) arcs.push_back({x, y});
      }
    }
  }
  return combine_blocks(terms, block_cost, [&](std::uint32_t block, std::vector<ClosureArc>& out) {
    out.insert(out.end(), block_arcs[block].begin(), block_arcs[block].end());
  });
}

// Dreyfus-Wagner style program: best[X][v] is the cheapest tree in the
// closure holding terminal set X and vertex v, where every tree edge points
// the way its subtree's net balance must flow. It ranges over exactly the
// forced-orientation patterns the explicit route enumerates.
// States costing more than `cap` are dropped; masks left without a finite
// state are skipped when merging.
RouteResult solve_by_subset_dp(const Terminals& terms, const MetricClosure& closure, Weight cap) {
  const int r = terms.size();
  const int n = closure.size();
  const std::uint32_t full = (std::uint32_t{1} << r) - 1;
  const std::size_t states = static_cast<std::size_t>(full + 1) * n;
  std::vector<Weight> best(states, kInfinity);
  std::vector<Weight> merged(states, kInfinity);
  std::vector<std::uint32_t> split(states, 0);  // merge choice at (X, v)
  std::vector<int> from(states, -1);             // extension origin for (X, v)
  auto at = [n](std::uint32_t mask, int v) { return static_cast<std::size_t>(mask) * n + v; };

  std::vector<Weight> mask_balance(full + 1, 0);
  for (std::uint32_t mask = 1; mask <= full; ++mask) mask_balance[mask] = terms.mask_balance(mask);
  std::vector<char> alive(full + 1, 0);
  auto finish_row = [&](std::uint32_t mask) {
    Weight* row = &best[at(mask, 0)];
    for (int v = 0; v < n; ++v) {
      if (row[v] > cap) row[v] = kInfinity;
      alive[mask] |= row[v] < kInfinity;
    }
  };

  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) == 1) {
      const int i = std::countr_zero(mask);
      const int x = terms.vertex[i];
      for (int v = 0; v < n; ++v) {
        best[at(mask, v)] = terms.balance[i] > 0 ? closure.weight(x, v) : closure.weight(v, x);
        from[at(mask, v)] = x;
      }
      finish_row(mask);
      continue;
    }
    // Row-wise so the inner loops run over contiguous v. Values stay at or
    // below kInfinity, so plain sums cannot overflow.
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    Weight* mrow = &merged[at(mask, 0)];
    std::uint32_t* srow = &split[at(mask, 0)];
    for (std::uint32_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      // Y = sub | low, Z = mask ^ Y, both non-empty.
      const std::uint32_t y = sub | low;
      if (!alive[y] || !alive[mask ^ y]) {
        if (sub == 0) break;
        continue;
      }
      const Weight* by = &best[at(y, 0)];
      const Weight* bz = &best[at(mask ^ y, 0)];
      for (int v = 0; v < n; ++v) {
        const Weight c = by[v] + bz[v];
        if (c < mrow[v]) {
          mrow[v] = c;
          srow[v] = y;
        }
      }
      if (sub == 0) break;
    }
    const Weight bal = mask_balance[mask];
    Weight* brow = &best[at(mask, 0)];
    int* frow = &from[at(mask, 0)];
    for (int v = 0; v < n; ++v) {
      brow[v] = mrow[v];
      frow[v] = v;
    }
    if (bal != 0) {
      // weight(u, u) = 0 never beats merged[u], so u = v needs no skip.
      for (int u = 0; u < n; ++u) {
        const Weight mu = mrow[u];
        if (mu >= kInfinity) continue;
        const Weight* w = bal > 0 ? closure.from_row(u) : closure.to_row(u);
        for (int v = 0; v < n; ++v) {
          const Weight c = mu + w[v];
          if (c < brow[v]) {
            brow[v] = c;
            frow[v] = u;
          }
        }
      }
    }
    finish_row(mask);
  }

  std::vector<Weight> block_cost(full + 1, kInfinity);
  std::vector<int> block_root(full + 1, -1);
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if (std::popcount(mask) < 2 || mask_balance[mask] != 0) continue;
    for (int v = 0; v < n; ++v) {
      if (best[at(mask, v)] < block_cost[mask]) {
        block_cost[mask] = best[at(mask, v)];
        block_root[mask] = v;
      }
    }
  }

  std::function<void(std::uint32_t, int, std::vector<ClosureArc>&)> collect =
      [&](std::uint32_t mask, int v, std::vector<ClosureArc>& out) {
        const int origin = from[at(mask, v)];
        if (std::popcount(mask) == 1) {
          const int i = std::countr_zero(mask);
          if (origin == v) return;
          if (terms.balance[i] > 0) {
            out.push_back({origin, v});
          } else {
            out.push_back({v, origin});
          }
          return;
        }
        if (origin != v) {
          if (mask_balance[mask] > 0) {
            out.push_back({origin, v});
          } else {
            out.push_back({v, origin});
          }
        }
        const std::uint32_t y = split[at(mask, origin)];
        collect(y, origin, out);
        collect(mask ^ y, origin, out);
      };

  return combine_blocks(terms, block_cost, [&](std::uint32_t block, std::vector<ClosureArc>& out) {
    collect(block, block_root[block], out);
  });
}

std::vector<std::pair<int, int>> pair_occurrences(const DslInstance& instance,
                                                  std::span<const int> chosen) {
  std::map<int, std::vector<int>> s_at;
  std::map<int, std::vector<int>> t_at;
  for (int i = static_cast<int>(instance.sources.size()) - 1; i >= 0; --i) {
    s_at[instance.sources[i]].push_back(i);
  }
  for (int i = static_cast<int>(instance.targets.size()) - 1; i >= 0; --i) {
    t_at[instance.targets[i]].push_back(i);
  }
  std::vector<std::pair<int, int>> pairs;
  // Occurrences of one vertex in both multisets pair with each other.
  for (auto& [v, ss] : s_at) {
    auto it = t_at.find(v);
    if (it == t_at.end()) continue;
    auto& ts = it->second;
    while (!ss.empty() && !ts.empty()) {
      pairs.emplace_back(ss.back(), ts.back());
      ss.pop_back();
      ts.pop_back();
    }
  }

  FlowNetwork net = linkage_network(instance, chosen, instance.sources, instance.targets);
  const int super_source = net.add_node();
  const int super_sink = net.add_node();
  Weight units = 0;
  for (int v = 0; v < instance.n; ++v) {
    const Weight b = net.balances()[v];
    if (b > 0) {
      net.add_arc(super_source, v, b);
      units += b;
    } else if (b < 0) {
      net.add_arc(v, super_sink, -b);
    }
    net.set_balance(v, 0);
  }
  const FlowResult flow = max_flow(net, super_source, super_sink);
  if (flow.value != units) throw std::logic_error("linkage witness does not route all terminals");
  for (const auto& path : decompose_unit_paths(net, flow.arc_flow, super_source, super_sink, units)) {
    const int x = net.arc(path.front()).head;
    const int y = net.arc(path.back()).tail;
    auto& ss = s_at[x];
    auto& ts = t_at[y];
    pairs.emplace_back(ss.back(), ts.back());
    ss.pop_back();
    ts.pop_back();
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace

bool check_linkage_feasible(const DslInstance& graph, std::span<const int> chosen,
                            std::span<const int> sources, std::span<const int> targets) {
  if (sources.size() != targets.size()) return false;
  return balances_feasible(linkage_network(graph, chosen, sources, targets));
}

bool check_linkage_feasible(const DslInstance& instance, std::span<const int> chosen) {
  return check_linkage_feasible(instance, chosen, instance.sources, instance.targets);
}

std::optional<DslSolution> solve_dsl(const DslInstance& instance, const DslOptions& options) {
  instance.validate();
  return solve_dsl(instance, metric_closure(instance), options);
}

std::optional<DslSolution> solve_dsl(const DslInstance& instance, const MetricClosure& closure,
                                     const DslOptions& options) {
  instance.validate();
  const Terminals terms = terminals_of(instance);

  RouteResult route;
  if (terms.size() == 0) {
    route.cost = 0;
  } else {
    DslMethod method = options.method;
    if (method == DslMethod::kAuto) {
      method = terms.size() <= kPatternAutoTerminals ? DslMethod::kPatterns : DslMethod::kSubsetDp;
    }
    if (method == DslMethod::kPatterns) {
      if (terms.size() > kPatternMaxTerminals) {
        throw SizeGuardExceeded("too many terminals for pattern enumeration: " +
                                std::to_string(terms.size()));
      }
      route = solve_by_patterns(terms, instance.directed, closure);
    } else {
      if (terms.size() > kSubsetDpMaxTerminals) {
        throw SizeGuardExceeded("too many terminals for the subset program: " +
                                std::to_string(terms.size()));
      }
      route = solve_by_subset_dp(terms, closure,
                                 options.prune_to_budget ? instance.budget : kInfinity);
    }
  }
  if (route.cost >= kInfinity) return std::nullopt;
  if (options.prune_to_budget && route.cost > instance.budget) return std::nullopt;

  DslSolution sol;
  sol.closure_cost = route.cost;
  std::vector<int> arcs;
  for (const ClosureArc& a : route.arcs) {
    for (int id : closure.expand(a.from, a.to)) arcs.push_back(id);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  for (int id : arcs) sol.cost += instance.arcs[id].weight;
  sol.arcs = std::move(arcs);
  sol.pairing = pair_occurrences(instance, sol.arcs);
  sol.within_budget = sol.cost <= instance.budget;
  return sol;
}

std::optional<Weight> dsl_oracle(const DslInstance& instance, bool acyclic_only) {
  instance.validate();
  const int m = instance.arc_count();
  if (m > kDslOracleArcLimit) {
    throw SizeGuardExceeded("linkage oracle limited to " + std::to_string(kDslOracleArcLimit) +
                            " arcs, got " + std::to_string(m));
  }
  const std::uint32_t count = std::uint32_t{1} << m;
  std::vector<std::pair<Weight, std::uint32_t>> order;
  order.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    Weight c = 0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) c += instance.arcs[i].weight;
    }
    order.emplace_back(c, mask);
  }
  std::sort(order.begin(), order.end());

  auto acyclic = [&](std::uint32_t mask) {
    std::vector<int> root(instance.n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int v) {
      while (root[v] != v) v = root[v] = root[root[v]];
      return v;
    };
    for (int i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      const int a = find(instance.arcs[i].tail);
      const int b = find(instance.arcs[i].head);
      if (a == b) return false;
      root[a] = b;
    }
    return true;
  };

  std::vector<int> chosen;
  for (auto [c, mask] : order) {
    if (acyclic_only && !acyclic(mask)) continue;
    chosen.clear();
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) chosen.push_back(i);
    }
    if (check_linkage_feasible(instance, chosen)) return c;
  }
  return std::nullopt;
}

DslInstance parse_dsl(std::istream& in) {
  detail::TextReader reader(in);
  DslInstance inst;
  auto header = reader.next_line("header");
  header.expect_word("dsl");
  const std::string kind = header.word("graph kind");
  if (kind == "directed") {
    inst.directed = true;
  } else if (kind == "undirected") {
    inst.directed = false;
  } else {
    header.fail("expected 'directed' or 'undirected', got '" + kind + "'");
  }
  inst.n = static_cast<int>(header.integer("vertex count"));
  const auto m = header.integer("arc count");
  header.expect_end();
  if (inst.n < 1) header.fail("vertex count must be positive");
  if (m < 0) header.fail("arc count must be non-negative");

  auto vertex = [&](detail::Line& line, const char* what) {
    const auto v = line.integer(what);
    if (v < 1 || v > inst.n) line.fail(std::string(what) + " out of range: " + std::to_string(v));
    return static_cast<int>(v - 1);
  };
  auto terminal_list = [&](const char* tag, std::vector<int>& out) {
    auto line = reader.next_line(tag);
    line.expect_word(tag);
    while (!line.at_end()) out.push_back(vertex(line, "terminal"));
  };
  terminal_list("S", inst.sources);
  auto t_line_no = 0;
  {
    auto line = reader.next_line("T");
    t_line_no = line.number();
    line.expect_word("T");
    while (!line.at_end()) inst.targets.push_back(vertex(line, "terminal"));
  }
  if (inst.sources.size() != inst.targets.size()) {
    throw ParseError(t_line_no, "S and T must have the same size");
  }
  {
    auto line = reader.next_line("budget line");
    line.expect_word("l");
    inst.budget = line.integer("budget");
    line.expect_end();
  }
  for (long long i = 0; i < m; ++i) {
    auto line = reader.next_line("arc line");
    line.expect_word("e");
    const int u = vertex(line, "tail");
    const int v = vertex(line, "head");
    const Weight w = line.integer("weight");
    line.expect_end();
    if (w < 0) line.fail("negative weight");
    inst.arcs.push_back({u, v, w});
  }
  reader.expect_eof();
  return inst;
}

DslInstance parse_dsl(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dsl(in);
}

std::string serialize_dsl(const DslInstance& inst) {
  std::ostringstream out;
  out << "dsl " << (inst.directed ? "directed" : "undirected") << ' ' << inst.n << ' '
      << inst.arc_count() << '\n';
  out << 'S';
  for (int v : inst.sources) out << ' ' << v + 1;
  out << "\nT";
  for (int v : inst.targets) out << ' ' << v + 1;
  out << "\nl " << inst.budget << '\n';
  for (const WeightedArc& a : inst.arcs) {
    out << "e " << a.tail + 1 << ' ' << a.head + 1 << ' ' << a.weight << '\n';
  }
  return out.str();
}

}  // namespace ftp
