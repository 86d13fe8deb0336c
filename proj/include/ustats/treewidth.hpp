#pragma once

#include <vector>

#include "ustats/config.hpp"
#include "ustats/graph.hpp"

namespace ustats {

/// A treewidth computation's result: the width plus an elimination order that
/// attains it (max degree at elimination over the order equals `width`).
struct TreewidthResult {
    int width = 0;
    std::vector<int> order;  ///< vertex ids in elimination sequence
};

/// Exact treewidth by dynamic programming over vertex subsets (the elimination
/// graph after removing a set is independent of the removal order, so states
/// memoize on the set). Deterministic: ties resolve toward the lowest vertex
/// id, and the witness is the lexicographically first optimal order under that
/// rule. Throws TooLarge when vertex_count() exceeds
/// config.exact_treewidth_bound (default 10).
TreewidthResult treewidth_exact(const SimpleGraph& g, const Config& config = {});

/// Heuristic strategies accepted by treewidth_upper.
enum class EliminationHeuristic { MinDegree, MinFill };

/// Upper bound from a greedy elimination order (min-degree or min-fill,
/// ties toward the lowest vertex id). The returned width is always >= the
/// exact treewidth and the order is a genuine witness for that bound.
TreewidthResult treewidth_upper(const SimpleGraph& g,
                                EliminationHeuristic heuristic = EliminationHeuristic::MinFill);

/// Degeneracy: max over the min-degree peeling order of the degree at removal.
/// A lower bound on treewidth.
int degeneracy(const SimpleGraph& g);

/// Largest possible treewidth of a simple graph with e edges, verified for
/// 1 <= e <= 15; throws OutOfTable outside that range.
int max_treewidth_by_edges(int e);

}  // namespace ustats
