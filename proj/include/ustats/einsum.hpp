#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ustats/config.hpp"
#include "ustats/notation.hpp"
#include "ustats/ordering.hpp"
#include "ustats/tensor.hpp"

namespace ustats {

/// Execution counters filled by einsum / eliminate_index.
struct ExecStats {
    std::uint64_t multiply_adds = 0;            ///< scalar multiply/accumulate operations executed
    std::uint64_t peak_intermediate_entries = 0;///< largest single intermediate materialized
    int steps = 0;                              ///< elimination steps performed
};

/// Evaluates the notation over the given tensors:
///   out(alpha) = sum over assignments of the non-output indices of the
///                product of every input tensor read at its tuple.
///
/// Evaluation is by iterated single-index elimination: indices that appear in
/// exactly one tensor are marginalized away first (a pure per-tensor
/// reduction), then the remaining summed indices fall in elimination-order
/// sequence, each step contracting exactly the tensors that carry the index.
/// Steps whose operands are two tensors overlapping only in the eliminated
/// index are lowered to a matrix product.
///
/// `order`, when given, must be a permutation of all canonical indices; its
/// restriction to the summed indices is used. When absent, one is chosen via
/// optimize_order(notation, extent, config.strategy).
///
/// Throws ShapeMismatch when tensor count/orders/extents disagree with the
/// notation, MemoryCapExceeded when an intermediate would exceed the cap.
/// Deterministic for fixed inputs, order, and extent — including under
/// config.threads > 1 (parallelism splits output rows, never reassociates a
/// single accumulation).
DenseTensor einsum(std::span<const DenseTensor> tensors, const EinsumNotation& notation,
                   const Config& config = {}, const EliminationOrder* order = nullptr,
                   ExecStats* stats = nullptr);

/// One elimination step in isolation: contracts the given tensors (each tuple
/// must contain `index`, else IndexAbsent) over `index`, returning the result
/// tensor and its tuple (the union of the operand indices minus `index`, in
/// ascending order). Duplicate indices inside a tuple are diagonal reads.
std::pair<DenseTensor, IndexTuple> eliminate_index(std::span<const DenseTensor> tensors,
                                                   const std::vector<IndexTuple>& tuples,
                                                   int index, const Config& config = {},
                                                   ExecStats* stats = nullptr);

}  // namespace ustats
