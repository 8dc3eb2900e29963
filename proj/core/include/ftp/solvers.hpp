#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ftp/instance.hpp"

namespace ftp {

enum class Answer { kNo, kYes };

struct Verdict {
  Answer answer = Answer::kNo;
  std::optional<EdgeSet> witness;
  std::optional<Weight> cost;
  std::string provenance;  // which solver or guard decided

  bool yes() const { return answer == Answer::kYes; }
};

struct Feasibility {
  bool feasible = false;
  Weight cost = 0;
};

// Flow check: feasible iff G[K] carries k+1 units from s to t with safe
// capacity k+1 and vulnerable capacity 1.
Feasibility verify_solution(const FtpInstance& instance, const EdgeSet& witness);

inline constexpr int kEnumerationVerifyLimit = 20;

// Definition-level check: every failure set F of at most k vulnerable edges
// of K leaves an s-t path in G[K \ F]. Throws SizeGuardExceeded when K holds
// more than kEnumerationVerifyLimit vulnerable edges.
bool verify_by_enumeration(const FtpInstance& instance, const EdgeSet& witness);

struct PathDecomposition {
  std::vector<std::vector<int>> paths;  // k+1 edge-id sequences from s to t
};

// Throws std::logic_error if the witness is infeasible.
PathDecomposition decompose_witness(const FtpInstance& instance, const EdgeSet& witness);

struct Parameters {
  Weight dist = kInfinity;        // weighted s-t distance
  Weight relaxation = kInfinity;  // C
  std::optional<Weight> a;        // ell - dist, when dist is finite
  std::optional<Weight> b;        // C - ell, when C is finite
  std::optional<int> p;
  std::optional<int> q;
  std::optional<Weight> opt;
};

struct TriviallyYes {
  EdgeSet witness;
  std::string reason;
};

struct TriviallyNo {};

struct Reduced {
  Parameters parameters;
  Weight safe_distance = kInfinity;
};

using Preprocessed = std::variant<TriviallyYes, TriviallyNo, Reduced>;

Preprocessed preprocess(const FtpInstance& instance);

enum class GuessMode {
  kBySubsets,  // every subset of U, smallest first
  kBySize,     // sizes k+1 .. min(|U|, 2a, ell) when the guards allow
};

struct SolveOptions {
  int threads = 1;  // 0 picks the hardware concurrency
  bool preprocess = true;
};

// Largest |U| (vulnerable guessing) or |S| (safe guessing) accepted.
inline constexpr int kGuessEdgeLimit = 40;

Verdict solve_vulnerable_guess(const FtpInstance& instance, GuessMode mode = GuessMode::kBySize,
                               const SolveOptions& options = {});

Verdict solve_safe_guess(const FtpInstance& instance, const SolveOptions& options = {});

inline constexpr int kOracleEdgeLimit = 16;

struct OracleResult {
  bool yes = false;
  std::optional<Weight> opt;  // nullopt when no feasible edge set exists
  std::optional<int> p;
  std::optional<int> q;
  std::optional<EdgeSet> witness;  // cheapest, then fewest edges, then lexicographic
};

OracleResult ftp_oracle(const FtpInstance& instance);

Verdict oracle_verdict(const FtpInstance& instance);

Parameters compute_parameters(const FtpInstance& instance, bool use_oracle = false);

// Preprocess, then vulnerable guessing by size if |U| <= |S|, else safe
// guessing.
Verdict solve_auto(const FtpInstance& instance, const SolveOptions& options = {});

using DecisionSolver = std::function<Verdict(const FtpInstance&)>;

// Smallest ell' in [dist, C] the decision solver accepts, found by binary
// search. Returns the accepting verdict for that ell', or a No verdict when
// no feasible edge set exists at all.
Verdict minimize_cost(const FtpInstance& instance, const DecisionSolver& solver);

std::string to_string(Answer answer);

}  // namespace ftp
