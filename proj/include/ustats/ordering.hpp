#pragma once

#include <cstdint>
#include <vector>

#include "ustats/config.hpp"
#include "ustats/notation.hpp"

namespace ustats {

/// An elimination order over a notation's full index set, with its predicted
/// cost profile. `predicted_width` is the maximum vertex degree observed while
/// eliminating the order on the decomposition graph; `predicted_peak_entries`
/// is extent^(predicted_width+1), an upper bound on any single contraction
/// step's working set for that extent.
struct EliminationOrder {
    std::vector<int> order;                  ///< permutation of {0..index_count-1}
    int predicted_width = 0;
    std::uint64_t predicted_peak_entries = 0;
};

/// Max degree at elimination when removing `order` (a permutation of the
/// notation's indices) from the notation's decomposition graph.
int simulate_elimination_width(const EinsumNotation& notation, const std::vector<int>& order);

/// Picks an elimination order for the notation's decomposition graph and
/// prices it for the given extent.
///
/// - GreedyMinDegree / GreedyMinFill: linear greedy sweeps, ties toward the
///   lowest index; never fail.
/// - Exhaustive: width-optimal order (equals the graph's treewidth); throws
///   TooLargeForExhaustive when index_count > config.exhaustive_index_bound
///   (default 12).
/// - Auto: Exhaustive when within the bound, else GreedyMinFill.
EliminationOrder optimize_order(const EinsumNotation& notation, int extent,
                                OrderStrategy strategy = OrderStrategy::Auto,
                                const Config& config = {});

}  // namespace ustats
