#include <algorithm>
#include <bit>
#include <cstdint>

#include "ftp/solvers.hpp"

namespace ftp {

OracleResult ftp_oracle(const FtpInstance& instance) {
  instance.validate();
  const int m = instance.edge_count();
  if (m > kOracleEdgeLimit) {
    throw SizeGuardExceeded("oracle limited to " + std::to_string(kOracleEdgeLimit) +
                            " edges, got " + std::to_string(m));
  }
  const std::uint32_t count = std::uint32_t{1} << m;
  std::vector<std::pair<Weight, std::uint32_t>> order;
  order.reserve(count);
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    Weight c = 0;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) c += instance.edges[i].weight;
    }
    order.emplace_back(c, mask);
  }
  std::sort(order.begin(), order.end());

  auto ids_of = [m](std::uint32_t mask) {
    std::vector<int> ids;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1) ids.push_back(i);
    }
    return ids;
  };

  OracleResult out;
  for (auto [cost, mask] : order) {
    if (out.opt && cost > *out.opt) break;
    EdgeSet set(ids_of(mask));
    if (!verify_solution(instance, set).feasible) continue;
    out.opt = cost;
    int safe = 0;
    int vulnerable = 0;
    for (int id : set) (instance.edges[id].safe() ? safe : vulnerable)++;
    out.p = out.p ? std::min(*out.p, safe) : safe;
    out.q = out.q ? std::min(*out.q, vulnerable) : vulnerable;
    if (!out.witness || set.size() < out.witness->size() ||
        (set.size() == out.witness->size() && set < *out.witness)) {
      out.witness = std::move(set);
    }
  }
  out.yes = out.opt && *out.opt <= instance.ell;
  return out;
}

Verdict oracle_verdict(const FtpInstance& instance) {
  const OracleResult r = ftp_oracle(instance);
  Verdict v;
  v.provenance = "oracle";
  if (r.yes) {
    v.answer = Answer::kYes;
    v.witness = r.witness;
    v.cost = r.opt;
  }
  return v;
}

}  // namespace ftp
