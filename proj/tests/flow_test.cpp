#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "ftp/flow.hpp"
#include "ftp/reductions.hpp"
#include "ftp/relaxation.hpp"
#include "ftp/shortest_paths.hpp"

namespace {

using ftp::FlowNetwork;
using ftp::FlowResult;
using ftp::Weight;

void expect_valid_flow(const FlowNetwork& net, const FlowResult& r, int source, int sink) {
  std::vector<Weight> excess(net.node_count(), 0);
  Weight cost = 0;
  for (int a = 0; a < net.arc_count(); ++a) {
    ASSERT_GE(r.arc_flow[a], 0);
    ASSERT_LE(r.arc_flow[a], net.arc(a).capacity);
    excess[net.arc(a).tail] -= r.arc_flow[a];
    excess[net.arc(a).head] += r.arc_flow[a];
    cost += r.arc_flow[a] * net.arc(a).cost;
  }
  for (int v = 0; v < net.node_count(); ++v) {
    if (v == source) {
      EXPECT_EQ(excess[v], -r.value);
    } else if (v == sink) {
      EXPECT_EQ(excess[v], r.value);
    } else {
      EXPECT_EQ(excess[v], 0);
    }
  }
  EXPECT_EQ(cost, r.cost);
}

FlowNetwork random_network(std::mt19937_64& rng, int nodes, int arcs, Weight max_cap,
                           Weight max_cost) {
  FlowNetwork net(nodes);
  for (int i = 0; i < arcs; ++i) {
    const int u = static_cast<int>(rng() % nodes);
    int v = static_cast<int>(rng() % nodes);
    while (v == u) v = static_cast<int>(rng() % nodes);
    net.add_arc(u, v, static_cast<Weight>(rng() % (max_cap + 1)),
                static_cast<Weight>(rng() % (max_cost + 1)));
  }
  return net;
}

TEST(MaxFlow, SingleArc) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 2);
  EXPECT_EQ(ftp::max_flow(net, 0, 1).value, 2);
}

TEST(MaxFlow, ParallelUnitArcs) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 1);
  net.add_arc(0, 1, 1);
  EXPECT_EQ(ftp::max_flow(net, 0, 1).value, 2);
}

TEST(MaxFlow, LimitStopsEarly) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 10);
  EXPECT_EQ(ftp::max_flow(net, 0, 1, 3).value, 3);
}

TEST(MaxFlow, MatchesMinCutOnRandomUnitNetworks) {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    const FlowNetwork net = random_network(rng, 6, 4 + static_cast<int>(rng() % 10), 1, 0);
    const FlowResult r = ftp::max_flow(net, 0, 5);
    EXPECT_EQ(r.value, brute::min_cut(net, 0, 5));
    expect_valid_flow(net, r, 0, 5);
  }
}

TEST(MaxFlow, MatchesMinCutWithCapacities) {
  std::mt19937_64 rng(6);
  for (int round = 0; round < 300; ++round) {
    const FlowNetwork net = random_network(rng, 6, 4 + static_cast<int>(rng() % 10), 4, 0);
    EXPECT_EQ(ftp::max_flow(net, 0, 5).value, brute::min_cut(net, 0, 5));
  }
}

TEST(MinCostFlow, SingleArc) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 2, 5);
  const auto r = ftp::min_cost_flow(net, 0, 1, 2);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 10);
  EXPECT_FALSE(ftp::min_cost_flow(net, 0, 1, 3));
}

TEST(MinCostFlow, ZeroTarget) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 2, 5);
  const auto r = ftp::min_cost_flow(net, 0, 1, 0);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->cost, 0);
}

TEST(MinCostFlow, DiamondMatchesEnumeration) {
  FlowNetwork net(4);
  net.add_arc(0, 1, 2, 1);
  net.add_arc(0, 2, 2, 4);
  net.add_arc(1, 3, 1, 2);
  net.add_arc(2, 3, 2, 1);
  net.add_arc(1, 2, 2, 1);
  const auto r = ftp::min_cost_flow(net, 0, 3, 2);
  ASSERT_TRUE(r);
  const auto want = brute::min_cost_by_enumeration(net, 0, 3, 2);
  ASSERT_TRUE(want);
  EXPECT_EQ(r->cost, *want);
  expect_valid_flow(net, *r, 0, 3);
}

TEST(MinCostFlow, MatchesEnumerationOnSmallNetworks) {
  std::mt19937_64 rng(8);
  int feasible = 0;
  for (int round = 0; round < 300; ++round) {
    const FlowNetwork net = random_network(rng, 4 + static_cast<int>(rng() % 2),
                                           3 + static_cast<int>(rng() % 6), 3, 5);
    const int sink = net.node_count() - 1;
    const Weight target = 1 + static_cast<Weight>(rng() % 3);
    const auto r = ftp::min_cost_flow(net, 0, sink, target);
    const auto want = brute::min_cost_by_enumeration(net, 0, sink, target);
    ASSERT_EQ(r.has_value(), want.has_value());
    if (r) {
      ++feasible;
      EXPECT_EQ(r->cost, *want);
      EXPECT_EQ(r->value, target);
      expect_valid_flow(net, *r, 0, sink);
    }
  }
  EXPECT_GT(feasible, 30);
}

TEST(MinCostFlow, DeterministicOnTies) {
  FlowNetwork net(2);
  net.add_arc(0, 1, 1, 3);
  net.add_arc(0, 1, 1, 3);
  const auto r = ftp::min_cost_flow(net, 0, 1, 1);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->arc_flow, (std::vector<Weight>{1, 0}));
}

TEST(Balances, RouteAndFeasibility) {
  FlowNetwork net(3);
  net.add_arc(0, 1, 5);
  net.add_arc(1, 2, 5);
  net.set_balance(0, 2);
  net.set_balance(2, -2);
  EXPECT_TRUE(ftp::balances_feasible(net));
  const auto routed = ftp::route_balances(net);
  ASSERT_TRUE(routed);
  EXPECT_EQ((*routed)[0], 2);
  net.set_balance(0, -2);
  net.set_balance(2, 2);
  EXPECT_FALSE(ftp::balances_feasible(net));
}

TEST(DecomposeUnitPaths, PathsFollowFlow) {
  std::mt19937_64 rng(9);
  for (int round = 0; round < 200; ++round) {
    const FlowNetwork net = random_network(rng, 6, 12, 2, 0);
    const FlowResult r = ftp::max_flow(net, 0, 5);
    const auto paths = ftp::decompose_unit_paths(net, r.arc_flow, 0, 5, r.value);
    ASSERT_EQ(static_cast<Weight>(paths.size()), r.value);
    std::vector<Weight> used(net.arc_count(), 0);
    for (const auto& path : paths) {
      int at = 0;
      std::vector<char> visited(net.node_count(), 0);
      visited[0] = 1;
      for (int a : path) {
        ASSERT_EQ(net.arc(a).tail, at);
        at = net.arc(a).head;
        EXPECT_FALSE(visited[at]) << "path revisits a node";
        visited[at] = 1;
        ++used[a];
      }
      EXPECT_EQ(at, 5);
    }
    for (int a = 0; a < net.arc_count(); ++a) EXPECT_LE(used[a], r.arc_flow[a]);
  }
}

TEST(Relaxation, SafeEdgePaysPerUnit) {
  const auto inst = ftp::parse_instance("ftp undirected 2 1\ns 1 t 2 k 1 l 5\ne 1 2 5 S\n");
  const auto r = ftp::relaxation_cost(inst);
  EXPECT_EQ(r.cost, 10);
  EXPECT_EQ(r.support.ids(), std::vector<int>{0});
}

TEST(Relaxation, TwoParallelVulnerable) {
  const auto inst =
      ftp::parse_instance("ftp undirected 2 2\ns 1 t 2 k 1 l 2\ne 1 2 1 V\ne 1 2 1 V\n");
  EXPECT_EQ(ftp::relaxation_cost(inst).cost, 2);
}

TEST(Relaxation, InfeasibleIsInfinity) {
  const auto inst = ftp::parse_instance("ftp directed 2 1\ns 1 t 2 k 1 l 2\ne 1 2 1 V\n");
  EXPECT_FALSE(ftp::relaxation_cost(inst).feasible());
}

TEST(Relaxation, BicliqueInstanceBound) {
  const auto inst = ftp::from_biclique(ftp::random_biclique(4, 4, 16, 2, 1));
  const auto r = ftp::relaxation_cost(inst);
  EXPECT_LE(r.cost, 12);
  EXPECT_LE(r.cost - inst.ell, 1);
}

TEST(Relaxation, LowerBoundAndCancellation) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    ftp::RandomSpec spec;
    spec.n = 6;
    spec.edges = 11;
    spec.k = static_cast<int>(seed % 4);
    spec.directed = seed % 3 == 0;
    spec.policy = ftp::LengthPolicy::kFixed;
    spec.seed = seed;
    const auto inst = ftp::gen_random(spec);
    const auto r = ftp::relaxation_cost(inst);
    if (!r.feasible()) continue;
    EXPECT_GE(r.cost, (inst.k + 1) * ftp::st_distance(inst));
    expect_valid_flow(r.network, r.flow, inst.s, inst.t);
    if (!inst.directed) {
      for (int i = 0; i < inst.edge_count(); ++i) {
        EXPECT_TRUE(r.flow.arc_flow[2 * i] == 0 || r.flow.arc_flow[2 * i + 1] == 0);
      }
    }
  }
}

}  // namespace
