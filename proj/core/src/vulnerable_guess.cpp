#include <algorithm>

#include "ftp/dsl.hpp"
#include "ftp/flow.hpp"
#include "ftp/relaxation.hpp"
#include "ftp/shortest_paths.hpp"
#include "ftp/solvers.hpp"
#include "search.hpp"

namespace ftp {

namespace {

struct GuessContext {
  const FtpInstance& instance;
  std::vector<int> vulnerable;  // ids of U
  std::vector<int> safe;        // ids of S; DSL arc j models edge safe[j]
  DslInstance base;             // safe edges only, terminals filled per guess
  MetricClosure closure;
};

struct Oriented {
  int id;
  int from;
  int to;
};

bool flow_allows(const GuessContext& ctx, const std::vector<Oriented>& guess) {
  const FtpInstance& inst = ctx.instance;
  const Weight units = inst.k + 1;
  FlowNetwork net(inst.n);
  for (int id : ctx.safe) {
    const Edge& e = inst.edges[id];
    net.add_arc(e.tail, e.head, units);
    if (!inst.directed) net.add_arc(e.head, e.tail, units);
  }
  for (const Oriented& o : guess) net.add_arc(o.from, o.to, 1);
  return max_flow(net, inst.s, inst.t, units).value >= units;
}

std::optional<Verdict> try_orientation(const GuessContext& ctx, const std::vector<Oriented>& guess,
                                       Weight guess_cost) {
  const FtpInstance& inst = ctx.instance;
  if (!flow_allows(ctx, guess)) return std::nullopt;

  DslInstance dsl = ctx.base;
  dsl.budget = inst.ell - guess_cost;
  for (const Oriented& o : guess) {
    dsl.sources.push_back(o.to);
    dsl.targets.push_back(o.from);
  }
  for (int i = 0; i <= inst.k; ++i) {
    dsl.sources.push_back(inst.s);
    dsl.targets.push_back(inst.t);
  }
  const auto linkage = solve_dsl(dsl, ctx.closure, {DslMethod::kAuto, true});
  if (!linkage || !linkage->within_budget) return std::nullopt;

  std::vector<int> ids;
  for (int arc : linkage->arcs) ids.push_back(ctx.safe[arc]);
  for (const Oriented& o : guess) ids.push_back(o.id);
  EdgeSet witness(std::move(ids));
  const Feasibility check = verify_solution(inst, witness);
  if (!check.feasible || check.cost > inst.ell) return std::nullopt;
  return Verdict{Answer::kYes, std::move(witness), check.cost, ""};
}

std::optional<Verdict> try_guess(const GuessContext& ctx, const std::vector<int>& chosen) {
  const FtpInstance& inst = ctx.instance;
  Weight cost = 0;
  for (int i : chosen) cost += inst.edges[ctx.vulnerable[i]].weight;
  if (cost > inst.ell) return std::nullopt;

  const int g = static_cast<int>(chosen.size());
  const std::uint64_t orientations = inst.directed ? 1 : std::uint64_t{1} << g;
  std::vector<Oriented> guess(g);
  for (std::uint64_t mask = 0; mask < orientations; ++mask) {
    for (int j = 0; j < g; ++j) {
      const Edge& e = inst.edges[ctx.vulnerable[chosen[j]]];
      const bool flip = mask >> j & 1;
      guess[j] = {e.id, flip ? e.head : e.tail, flip ? e.tail : e.head};
    }
    if (auto v = try_orientation(ctx, guess, cost)) return v;
  }
  return std::nullopt;
}

}  // namespace

Verdict solve_vulnerable_guess(const FtpInstance& instance, GuessMode mode,
                               const SolveOptions& options) {
  instance.validate();
  const std::string name = mode == GuessMode::kBySize ? "q-guess" : "u-guess";
  if (options.preprocess) {
    const auto pre = preprocess(instance);
    if (std::holds_alternative<TriviallyNo>(pre)) {
      return Verdict{Answer::kNo, std::nullopt, std::nullopt, "guard:distance"};
    }
    if (const auto* yes = std::get_if<TriviallyYes>(&pre)) {
      return Verdict{Answer::kYes, yes->witness, instance.cost(yes->witness), yes->reason};
    }
  }

  GuessContext ctx{instance, instance.edge_ids(EdgeKind::kVulnerable),
                   instance.edge_ids(EdgeKind::kSafe), {}, {}};
  const int u = static_cast<int>(ctx.vulnerable.size());
  if (u > kGuessEdgeLimit) {
    throw SizeGuardExceeded("vulnerable guessing limited to " + std::to_string(kGuessEdgeLimit) +
                            " vulnerable edges, got " + std::to_string(u));
  }

  int lo = 0;
  Weight hi = u;
  if (mode == GuessMode::kBySize) {
    // Without a cheap enough safe path every solution needs k+1 vulnerable
    // edges; with C above ell as well, an optimum needs at most 2a of them.
    const Weight dist = st_distance(instance);
    const Weight safe_dist = st_distance(instance, safe_edge);
    if (dist > instance.ell) {
      return Verdict{Answer::kNo, std::nullopt, std::nullopt, name};
    }
    hi = std::min<Weight>(hi, instance.ell);
    if (safe_dist > instance.ell) {
      lo = instance.k + 1;
      if (relaxation_cost(instance).cost > instance.ell) {
        hi = std::min<Weight>(hi, 2 * (instance.ell - dist));
      }
    }
  }

  ctx.base.directed = instance.directed;
  ctx.base.n = instance.n;
  for (int id : ctx.safe) {
    const Edge& e = instance.edges[id];
    ctx.base.arcs.push_back({e.tail, e.head, e.weight});
  }
  ctx.closure = metric_closure(ctx.base);

  for (int size = lo; size <= hi; ++size) {
    const std::uint64_t count = detail::binomial(u, size);
    auto hit = detail::first_hit<Verdict>(count, options.threads, [&](std::uint64_t rank) {
      return try_guess(ctx, detail::unrank_combination(u, size, rank));
    });
    if (hit) {
      hit->provenance = name;
      return *hit;
    }
  }
  return Verdict{Answer::kNo, std::nullopt, std::nullopt, name};
}

}  // namespace ftp
