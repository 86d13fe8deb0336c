#pragma once

#include <cstdint>
#include <vector>

#include "ustats/config.hpp"
#include "ustats/einsum.hpp"
#include "ustats/kernel.hpp"
#include "ustats/partition.hpp"
#include "ustats/tensor.hpp"

namespace ustats {

/// Phase timings and counters for one statistic evaluation. Tensorization
/// (kernel evaluation into tensors, plus sparsified copies) is reported
/// separately from contraction and is excluded from contract_seconds.
struct RunStats {
    double tensorize_seconds = 0.0;
    double contract_seconds = 0.0;
    std::uint64_t einsum_calls = 0;
    std::uint64_t partitions_enumerated = 0;   ///< full lattice size seen by the stream
    std::uint64_t partitions_evaluated = 0;    ///< sparsification survivors contracted
    std::uint64_t multiply_adds = 0;           ///< executed contraction work
    std::uint64_t peak_intermediate_entries = 0;
};

/// Materializes one tensor per kernel component: tensor k holds
/// components[k] evaluated at every index tuple in [0,n)^|signature[k]|.
/// Throws MemoryCapExceeded before allocating past the cap and
/// ComponentEvaluationError if a component throws (or, in strict mode,
/// returns a non-finite value).
std::vector<DenseTensor> tensorize(const MDKernel& kernel, const Sample& sample,
                                   const Config& config = {}, RunStats* stats = nullptr);

/// V-statistic: the sum of h over ALL index tuples in [0,n)^m, evaluated as a
/// single full contraction of the component tensors under the kernel's
/// signature. No sample-size precondition beyond n >= 1.
double v_statistic(const MDKernel& kernel, const Sample& sample, const Config& config = {},
                   RunStats* stats = nullptr);

/// Partition-restricted V-statistic: the sum of h over index tuples whose
/// equality pattern is *coarsened by* `partition` (slots in one block take one
/// common value; distinct blocks range freely, coincidences included).
/// Evaluated as the contraction of the unsparsified tensors under the induced
/// (block-relabeled) signature.
double restricted_v(const MDKernel& kernel, const Sample& sample, const SetPartition& partition,
                    const Config& config = {}, RunStats* stats = nullptr);

/// U-statistic: the sum of h over all m-tuples of pairwise-distinct indices,
/// computed exactly as the Möbius-weighted combination of restricted sums:
/// the component tensors are sparsified (entries at repeated coordinates
/// zeroed), the partition lattice is streamed with the sparsification filter
/// fused in, each survivor contributes mobius_coefficient(pi) times the
/// contraction under its induced signature, and the weighted terms are added
/// with pairwise (tree) summation in enumeration order. Deterministic for a
/// fixed lattice order, threaded or not.
/// Throws SampleTooSmall when sample.size() < arity.
double u_statistic(const MDKernel& kernel, const Sample& sample, const Config& config = {},
                   RunStats* stats = nullptr);

/// Same combination without the sparsification shortcut: plain tensors, every
/// lattice partition evaluated. Exists to demonstrate the shortcut is exact;
/// prefer u_statistic.
double u_statistic_unsparsified(const MDKernel& kernel, const Sample& sample,
                                const Config& config = {}, RunStats* stats = nullptr);

}  // namespace ustats
