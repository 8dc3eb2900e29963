#include "ftp/flow.hpp"
#include "ftp/relaxation.hpp"
#include "ftp/solvers.hpp"
#include "search.hpp"

namespace ftp {

namespace {

std::optional<Verdict> try_safe_set(const FtpInstance& instance, const std::vector<int>& safe,
                                    const std::vector<int>& chosen) {
  Weight chosen_cost = 0;
  std::vector<char> in_set(instance.edge_count(), 0);
  for (int i : chosen) {
    chosen_cost += instance.edges[safe[i]].weight;
    in_set[safe[i]] = 1;
  }
  if (chosen_cost > instance.ell) return std::nullopt;

  const Weight units = instance.k + 1;
  const FlowNetwork net = ftp_network(instance, [&](const Edge& e) {
    if (e.vulnerable()) return ArcTerms{1, e.weight};
    return in_set[e.id] ? ArcTerms{units, 0} : ArcTerms{0, 0};
  });
  auto flow = min_cost_flow(net, instance.s, instance.t, units);
  if (!flow) return std::nullopt;
  cancel_opposite_flow(instance, net, *flow);
  if (flow->cost + chosen_cost > instance.ell) return std::nullopt;

  std::vector<int> ids;
  for (int i : chosen) ids.push_back(safe[i]);
  const auto per_edge = edge_flow(instance, net, *flow);
  for (const Edge& e : instance.edges) {
    if (e.vulnerable() && per_edge[e.id] > 0) ids.push_back(e.id);
  }
  EdgeSet witness(std::move(ids));
  const Feasibility check = verify_solution(instance, witness);
  if (!check.feasible || check.cost > instance.ell) return std::nullopt;
  return Verdict{Answer::kYes, std::move(witness), check.cost, ""};
}

}  // namespace

Verdict solve_safe_guess(const FtpInstance& instance, const SolveOptions& options) {
  instance.validate();
  if (options.preprocess) {
    const auto pre = preprocess(instance);
    if (std::holds_alternative<TriviallyNo>(pre)) {
      return Verdict{Answer::kNo, std::nullopt, std::nullopt, "guard:distance"};
    }
    if (const auto* yes = std::get_if<TriviallyYes>(&pre)) {
      return Verdict{Answer::kYes, yes->witness, instance.cost(yes->witness), yes->reason};
    }
  }
  const std::vector<int> safe = instance.edge_ids(EdgeKind::kSafe);
  const int count = static_cast<int>(safe.size());
  if (count > kGuessEdgeLimit) {
    throw SizeGuardExceeded("safe guessing limited to " + std::to_string(kGuessEdgeLimit) +
                            " safe edges, got " + std::to_string(count));
  }
  for (int size = 0; size <= count; ++size) {
    auto hit = detail::first_hit<Verdict>(
        detail::binomial(count, size), options.threads, [&](std::uint64_t rank) {
          return try_safe_set(instance, safe, detail::unrank_combination(count, size, rank));
        });
    if (hit) {
      hit->provenance = "s-guess";
      return *hit;
    }
  }
  return Verdict{Answer::kNo, std::nullopt, std::nullopt, "s-guess"};
}

}  // namespace ftp
