#pragma once

#include <cstdint>

namespace ustats {

/// How einsum / optimize_order pick an elimination order.
enum class OrderStrategy {
    Auto,             ///< exhaustive when the index count permits, else greedy min-fill
    GreedyMinDegree,  ///< eliminate the lowest-degree vertex first (ties: lowest index)
    GreedyMinFill,    ///< eliminate the vertex adding the fewest fill edges (ties: lowest index)
    Exhaustive,       ///< provably width-optimal order via subset dynamic programming
};

/// Knobs shared by the tensor layer and the statistic engine. Value type;
/// copy freely. Defaults are safe for laptop-sized runs.
struct Config {
    /// Hard cap on the entry count of any materialized tensor (inputs and
    /// intermediates alike). 2^31 doubles = 16 GiB.
    std::uint64_t memory_cap_entries = std::uint64_t{1} << 31;

    /// Worker threads for per-partition evaluation and intra-contraction row
    /// splitting. 0 = use the hardware concurrency.
    int threads = 0;

    /// Elimination-order selection when the caller does not pass one.
    OrderStrategy strategy = OrderStrategy::Auto;

    /// Largest index count optimize_order accepts for the exhaustive strategy.
    int exhaustive_index_bound = 12;

    /// Largest vertex count treewidth_exact accepts.
    int exact_treewidth_bound = 10;

    /// Brute-force evaluators refuse beyond this many summand tuples.
    std::uint64_t brute_force_term_cap = 10'000'000;

    /// Reject non-finite kernel component values at tensorization time instead
    /// of letting NaN/inf propagate into the statistic.
    bool strict_nonfinite = false;

    /// Resolved thread count (>= 1).
    int effective_threads() const;
};

}  // namespace ustats
