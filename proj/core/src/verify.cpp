#include <bit>
#include <stdexcept>

#include "ftp/flow.hpp"
#include "ftp/relaxation.hpp"
#include "ftp/solvers.hpp"

namespace ftp {

namespace {

void check_ids(const FtpInstance& instance, const EdgeSet& witness) {
  for (int id : witness) {
    if (id < 0 || id >= instance.edge_count()) {
      throw InvalidInstance("witness edge id out of range: " + std::to_string(id + 1));
    }
  }
}

FlowNetwork witness_network(const FtpInstance& instance, const EdgeSet& witness) {
  const Weight units = instance.k + 1;
  return ftp_network(instance, [&](const Edge& e) {
    if (!witness.contains(e.id)) return ArcTerms{0, 0};
    return ArcTerms{e.safe() ? units : 1, 0};
  });
}

bool reaches(const FtpInstance& instance, const std::vector<char>& usable) {
  std::vector<std::vector<int>> adj(instance.n);
  for (const Edge& e : instance.edges) {
    if (!usable[e.id]) continue;
    adj[e.tail].push_back(e.head);
    if (!instance.directed) adj[e.head].push_back(e.tail);
  }
  std::vector<char> seen(instance.n, 0);
  std::vector<int> stack{instance.s};
  seen[instance.s] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    if (v == instance.t) return true;
    for (int w : adj[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace

Feasibility verify_solution(const FtpInstance& instance, const EdgeSet& witness) {
  check_ids(instance, witness);
  Feasibility out;
  out.cost = instance.cost(witness);
  const Weight units = instance.k + 1;
  const FlowNetwork net = witness_network(instance, witness);
  out.feasible = max_flow(net, instance.s, instance.t, units).value >= units;
  return out;
}

bool verify_by_enumeration(const FtpInstance& instance, const EdgeSet& witness) {
  check_ids(instance, witness);
  std::vector<int> vulnerable;
  for (int id : witness) {
    if (instance.edges[id].vulnerable()) vulnerable.push_back(id);
  }
  if (static_cast<int>(vulnerable.size()) > kEnumerationVerifyLimit) {
    throw SizeGuardExceeded("enumeration verifier limited to " +
                            std::to_string(kEnumerationVerifyLimit) + " vulnerable edges");
  }
  std::vector<char> usable(instance.edge_count(), 0);
  for (int id : witness) usable[id] = 1;
  const std::uint32_t count = std::uint32_t{1} << vulnerable.size();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if (std::popcount(mask) > instance.k) continue;
    for (std::size_t i = 0; i < vulnerable.size(); ++i) usable[vulnerable[i]] = !(mask >> i & 1);
    if (!reaches(instance, usable)) return false;
  }
  return true;
}

PathDecomposition decompose_witness(const FtpInstance& instance, const EdgeSet& witness) {
  check_ids(instance, witness);
  const Weight units = instance.k + 1;
  const FlowNetwork net = witness_network(instance, witness);
  FlowResult flow = max_flow(net, instance.s, instance.t, units);
  if (flow.value < units) throw std::logic_error("decompose_witness: witness is infeasible");
  cancel_opposite_flow(instance, net, flow);
  PathDecomposition out;
  for (const auto& arcs : decompose_unit_paths(net, flow.arc_flow, instance.s, instance.t, units)) {
    std::vector<int> path;
    path.reserve(arcs.size());
    for (int a : arcs) path.push_back(net.arc(a).origin);
    out.paths.push_back(std::move(path));
  }
  if (static_cast<Weight>(out.paths.size()) != units) {
    throw std::logic_error("decompose_witness: flow decomposition lost units");
  }
  return out;
}

}  // namespace ftp
