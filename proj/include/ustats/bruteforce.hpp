#pragma once

#include <functional>
#include <span>

#include "ustats/config.hpp"
#include "ustats/kernel.hpp"
#include "ustats/partition.hpp"

namespace ustats {

/// A kernel evaluated directly at an index tuple (no decomposition assumed).
using FlatKernel = std::function<double(const Sample&, std::span<const int>)>;

/// Literal U-statistic: sum of the kernel over every arrangement of m
/// pairwise-distinct indices out of [0,n). The reference implementation the
/// lattice path is tested against — it never touches tensors or partitions.
/// Throws SampleTooSmall when n < m and TooManyTerms when the falling
/// factorial n!/(n-m)! exceeds config.brute_force_term_cap.
double u_brute_force(const FlatKernel& kernel, int arity, const Sample& sample,
                     const Config& config = {});

/// Literal V-statistic: sum over all of [0,n)^m. Throws TooManyTerms when n^m
/// exceeds the cap.
double v_brute_force(const FlatKernel& kernel, int arity, const Sample& sample,
                     const Config& config = {});

/// Literal partition-restricted U-statistic: sum over index tuples whose
/// equality pattern is *exactly* the partition (slots equal iff same block) —
/// i.e. over injective assignments of blocks to observations.
/// Throws SampleTooSmall when n < block_count and TooManyTerms over the cap.
double restricted_u_brute(const FlatKernel& kernel, int arity, const Sample& sample,
                          const SetPartition& partition, const Config& config = {});

/// Adapter: an MDKernel as a FlatKernel (product of its components).
FlatKernel flatten(const MDKernel& kernel);

}  // namespace ustats
