#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ftp/instance.hpp"
#include "ftp/shortest_paths.hpp"

namespace ftp {

// Directed Steiner Linkage: pick a cheapest arc set K admitting a bijection
// between the occurrences in `sources` and `targets` such that each source
// occurrence reaches its partner inside K.
struct DslInstance {
  bool directed = true;
  int n = 0;
  std::vector<WeightedArc> arcs;
  std::vector<int> sources;  // multiset S
  std::vector<int> targets;  // multiset T
  Weight budget = 0;

  int arc_count() const { return static_cast<int>(arcs.size()); }

  // Throws InvalidInstance on |S| != |T|, negative weights or bad vertices.
  void validate() const;
};

struct DslSolution {
  std::vector<int> arcs;                    // sorted arc ids of K
  std::vector<std::pair<int, int>> pairing;  // (index into sources, index into targets)
  Weight cost = 0;                           // weight of the distinct arcs in K
  Weight closure_cost = 0;                   // optimum before path expansion
  bool within_budget = true;
};

// Complete auxiliary graph whose arc (u, v) weighs dist(u, v) in the base
// graph, with one recorded shortest path per pair for expansion.
class MetricClosure {
 public:
  MetricClosure() = default;
  MetricClosure(int n, bool directed, std::span<const WeightedArc> arcs);

  int size() const { return n_; }
  bool directed() const { return directed_; }
  Weight weight(int u, int v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
  // from_row(u)[v] = weight(u, v); to_row(v)[u] = weight(u, v).
  const Weight* from_row(int u) const { return dist_.data() + static_cast<std::size_t>(u) * n_; }
  const Weight* to_row(int v) const { return rdist_.data() + static_cast<std::size_t>(v) * n_; }
  // Arc ids of the recorded shortest u-v path, in travel order.
  std::vector<int> expand(int u, int v) const { return tables_[u].path_to(v); }

 private:
  int n_ = 0;
  bool directed_ = true;
  std::vector<Weight> dist_;
  std::vector<Weight> rdist_;  // transpose of dist_
  std::vector<DistanceTable> tables_;
};

MetricClosure metric_closure(const DslInstance& instance);

// Removes min(count_S(v), count_T(v)) occurrences of every vertex from both
// multisets. Output multisets are sorted.
std::pair<std::vector<int>, std::vector<int>> cancel_common(std::span<const int> sources,
                                                            std::span<const int> targets);

// True iff the arcs `chosen` of the instance graph can route one unit from
// each source occurrence to some target occurrence with unbounded capacities.
bool check_linkage_feasible(const DslInstance& graph, std::span<const int> chosen,
                            std::span<const int> sources, std::span<const int> targets);
bool check_linkage_feasible(const DslInstance& instance, std::span<const int> chosen);

enum class DslMethod {
  kAuto,       // patterns for few terminals, subset DP otherwise
  kPatterns,   // explicit forest-pattern enumeration and embedding
  kSubsetDp,   // dynamic program over terminal subsets
};

struct DslOptions {
  DslMethod method = DslMethod::kAuto;
  // Only answers "is there a linkage within the budget": partial solutions
  // above the budget are discarded and an over-budget optimum comes back as
  // nullopt.
  bool prune_to_budget = false;
};

// Distinct post-cancellation terminal counts: kAuto uses patterns up to
// kPatternAutoTerminals; kPatterns and kSubsetDp refuse (SizeGuardExceeded)
// beyond their maxima.
inline constexpr int kPatternAutoTerminals = 4;
inline constexpr int kPatternMaxTerminals = 6;
inline constexpr int kSubsetDpMaxTerminals = 20;

// Exact optimum. nullopt iff no linkage exists at any cost; an optimum above
// the budget is returned with within_budget = false.
std::optional<DslSolution> solve_dsl(const DslInstance& instance, const DslOptions& options = {});
std::optional<DslSolution> solve_dsl(const DslInstance& instance, const MetricClosure& closure,
                                     const DslOptions& options = {});

inline constexpr int kDslOracleArcLimit = 14;

// Exhaustive optimum over arc subsets in nondecreasing cost. With
// `acyclic_only`, only subsets whose underlying undirected multigraph is a
// forest are considered. Throws SizeGuardExceeded above kDslOracleArcLimit arcs.
std::optional<Weight> dsl_oracle(const DslInstance& instance, bool acyclic_only = false);

DslInstance parse_dsl(std::istream& in);
DslInstance parse_dsl(std::string_view text);
std::string serialize_dsl(const DslInstance& instance);

}  // namespace ftp
