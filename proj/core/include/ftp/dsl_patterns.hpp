#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ftp/dsl.hpp"

namespace ftp {

// Abstract forest over terminal nodes [0, terminal_count) and unlabeled
// Steiner nodes [terminal_count, terminal_count + steiner_count).
struct ForestPattern {
  int terminal_count = 0;
  int steiner_count = 0;
  std::vector<std::pair<int, int>> edges;  // (from, to) when oriented
  bool oriented = false;
  std::vector<Weight> balance;  // per terminal node: supply minus demand

  int node_count() const { return terminal_count + steiner_count; }
};

// A tree shape on `terminals` labeled nodes plus Steiner nodes of degree at
// least three, with edges normalized (min, max) and sorted.
struct TreeShape {
  int terminals = 0;
  int steiner = 0;
  std::vector<std::pair<int, int>> edges;
};

// All canonical tree shapes on `terminals` labeled nodes (every terminal has
// degree >= 1, every Steiner node degree >= 3, so leaves are terminals).
// Cached and thread-safe.
const std::vector<TreeShape>& tree_shapes(int terminals);

// Streams every canonical forest pattern over the terminals (one node per
// entry of `balances`) with at most 2 * pair_count - 2 Steiner nodes. When
// `oriented`, each forest is emitted once per edge orientation. Stops early
// when `visit` returns false.
void enumerate_patterns(std::span<const Weight> balances, int pair_count, bool oriented,
                        const std::function<bool(const ForestPattern&)>& visit);

// True iff terminal balances route over the pattern's edges.
bool pattern_feasible(const ForestPattern& pattern);

struct Embedding {
  Weight cost = 0;
  std::vector<int> assignment;  // pattern node -> graph vertex
};

// Cheapest placement of Steiner nodes with terminal node i pinned to
// terminal_vertices[i]; each pattern edge pays the closure weight between the
// images of its endpoints (in edge direction when oriented). Placements need
// not be injective. nullopt if every placement is infinite.
std::optional<Embedding> embed_pattern(const ForestPattern& pattern,
                                       std::span<const int> terminal_vertices,
                                       const MetricClosure& closure);

}  // namespace ftp
