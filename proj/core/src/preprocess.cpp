#include <algorithm>
#include <bit>
#include <numeric>

#include "ftp/relaxation.hpp"
#include "ftp/shortest_paths.hpp"
#include "ftp/solvers.hpp"

namespace ftp {

std::string to_string(Answer answer) { return answer == Answer::kYes ? "yes" : "no"; }

Preprocessed preprocess(const FtpInstance& instance) {
  instance.validate();
  Reduced reduced;
  Parameters& params = reduced.parameters;
  params.dist = st_distance(instance);
  if (params.dist > instance.ell) return TriviallyNo{};
  params.a = instance.ell - params.dist;

  const DistanceTable safe = shortest_distances(instance, instance.s, safe_edge);
  reduced.safe_distance = safe.dist[instance.t];
  if (reduced.safe_distance <= instance.ell) {
    return TriviallyYes{EdgeSet(safe.path_to(instance.t)), "guard:safe-path"};
  }

  const Relaxation relax = relaxation_cost(instance);
  params.relaxation = relax.cost;
  if (relax.feasible()) {
    params.b = relax.cost - instance.ell;
    if (relax.cost <= instance.ell) return TriviallyYes{relax.support, "guard:relaxation"};
  }
  return reduced;
}

Parameters compute_parameters(const FtpInstance& instance, bool use_oracle) {
  instance.validate();
  Parameters params;
  params.dist = st_distance(instance);
  if (params.dist < kInfinity) params.a = instance.ell - params.dist;
  params.relaxation = relaxation_cost(instance).cost;
  if (params.relaxation < kInfinity) params.b = params.relaxation - instance.ell;
  if (use_oracle) {
    const OracleResult oracle = ftp_oracle(instance);
    params.opt = oracle.opt;
    params.p = oracle.p;
    params.q = oracle.q;
  }
  return params;
}

Verdict solve_auto(const FtpInstance& instance, const SolveOptions& options) {
  const auto pre = preprocess(instance);
  if (std::holds_alternative<TriviallyNo>(pre)) {
    return Verdict{Answer::kNo, std::nullopt, std::nullopt, "guard:distance"};
  }
  if (const auto* yes = std::get_if<TriviallyYes>(&pre)) {
    return Verdict{Answer::kYes, yes->witness, instance.cost(yes->witness), yes->reason};
  }
  SolveOptions inner = options;
  inner.preprocess = false;
  const auto safe_count = instance.edge_ids(EdgeKind::kSafe).size();
  const auto vulnerable_count = instance.edge_ids(EdgeKind::kVulnerable).size();
  if (vulnerable_count <= safe_count) {
    return solve_vulnerable_guess(instance, GuessMode::kBySize, inner);
  }
  return solve_safe_guess(instance, inner);
}

Verdict minimize_cost(const FtpInstance& instance, const DecisionSolver& solver) {
  instance.validate();
  const Weight dist = st_distance(instance);
  const Relaxation relax = relaxation_cost(instance);
  if (dist >= kInfinity || !relax.feasible()) {
    return Verdict{Answer::kNo, std::nullopt, std::nullopt, "guard:no-flow"};
  }
  // The relaxation support is feasible, so some ell' <= C is always accepted.
  FtpInstance probe = instance;
  Weight lo = dist;
  Weight hi = relax.cost;
  probe.ell = hi;
  Verdict best = solver(probe);
  if (!best.yes()) throw std::logic_error("minimize_cost: solver rejected the relaxation budget");
  hi = *best.cost;
  while (lo < hi) {
    const Weight mid = lo + (hi - lo) / 2;
    probe.ell = mid;
    Verdict v = solver(probe);
    if (v.yes()) {
      hi = *v.cost;
      best = std::move(v);
    } else {
      lo = mid + 1;
    }
  }
  return best;
}

}  // namespace ftp
