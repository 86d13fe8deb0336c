#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ustats/config.hpp"
#include "ustats/notation.hpp"

namespace ustats {

/// Cost anatomy of the lattice evaluation of a signature at extent n. The
/// estimate prices each surviving partition's contraction at n^(width+1) and
/// charges every one of the signature's K tensors, i.e.
/// K * sum over widths l of count_by_width[l] * n^(l+1).
struct ComplexityReport {
    std::vector<IndexTuple> signature;          ///< canonical (0-based) tuples
    int index_count = 0;                        ///< m
    int extent = 0;                             ///< n the estimate was priced at
    int graph_vertices = 0;
    int graph_edges = 0;

    int treewidth_lower = 0;                    ///< degeneracy of the decomposition graph
    int treewidth_upper = 0;                    ///< best greedy heuristic width
    std::optional<int> treewidth_exact;         ///< present when within the exact bound

    std::uint64_t bell_count = 0;               ///< full lattice size
    std::uint64_t sparsified_count = 0;         ///< survivors actually evaluated
    std::map<int, std::uint64_t> count_by_width;///< survivor quotient treewidth histogram
    int max_quotient_width = 0;                 ///< M = largest key of count_by_width

    /// Decimal rendering of the (possibly > 2^64) FLOP estimate.
    std::string flops_estimate;

    /// Multiply-adds actually executed, when the caller ran the evaluation.
    std::optional<std::uint64_t> executed_flops;
};

/// Enumerates the signature's sparsification survivors, computes each
/// quotient's exact treewidth, and aggregates the histogram and FLOP estimate.
/// Quotients have at most m vertices, so exactness is within reach whenever
/// enumeration is (the exact-treewidth vertex bound is lifted to m here).
/// Throws OrderTooLarge via partition enumeration for m outside [1,14].
ComplexityReport complexity_report(const std::vector<IndexTuple>& signature, int extent,
                                   const Config& config = {});

/// The chain signature ((1,2),(2,3),...,(m-1,m)) of an order-m sequential
/// kernel, 1-based (ready for MDKernel or validate_notation).
std::vector<IndexTuple> chain_signature(int m);

}  // namespace ustats
