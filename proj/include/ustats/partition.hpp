#pragma once

#include <cstdint>
#include <vector>

#include "ustats/notation.hpp"

namespace ustats {

/// A set partition of {0..m-1} in restricted-growth encoding: rgs[i] is the
/// block label of element i, labels are assigned in order of first appearance
/// (so rgs[0] == 0 and rgs[i+1] <= 1 + max(rgs[0..i])). Block labels therefore
/// coincide with ordering blocks by smallest member.
class SetPartition {
  public:
    SetPartition() = default;

    /// Validates the restricted-growth property; throws InvalidArgument.
    explicit SetPartition(std::vector<int> rgs);

    /// Finest partition (all singletons) of {0..m-1}.
    static SetPartition finest(int m);
    /// Coarsest partition (a single block) of {0..m-1}.
    static SetPartition coarsest(int m);
    /// Builds from explicit blocks over {0..m-1}; throws InvalidArgument if the
    /// blocks do not partition the ground set.
    static SetPartition from_blocks(int m, const std::vector<std::vector<int>>& blocks);

    int ground_size() const { return static_cast<int>(rgs_.size()); }
    int block_count() const { return blocks_; }
    int block_of(int element) const { return rgs_[element]; }
    const std::vector<int>& rgs() const { return rgs_; }

    /// Blocks as sorted member lists, in block-label order.
    std::vector<std::vector<int>> blocks() const;

    bool operator==(const SetPartition& other) const { return rgs_ == other.rgs_; }

  private:
    std::vector<int> rgs_;
    int blocks_ = 0;
};

/// Streams all partitions of {0..m-1} in lexicographic restricted-growth order
/// (coarsest 00..0 first, finest 01..m-1 last) without materializing the whole
/// lattice level. Supports 1 <= m <= 14; throws OrderTooLarge outside that.
class PartitionStream {
  public:
    explicit PartitionStream(int m);

    /// Writes the next partition and returns true, or returns false when done.
    bool next(SetPartition& out);

    /// Collects up to `max_count` further partitions (in order) into `chunk`;
    /// returns the number delivered. This is the splitter that lets downstream
    /// evaluation fan chunks out to workers while keeping a deterministic
    /// global ordinal for reassembly.
    std::size_t next_chunk(std::vector<SetPartition>& chunk, std::size_t max_count);

  private:
    std::vector<int> rgs_;
    std::vector<int> prefix_max_;
    bool exhausted_ = false;
    bool first_ = true;
    bool advance();
};

/// Number of partitions of an m-element set (Bell number), for 0 <= m <= 15.
/// Throws InvalidArgument outside that range.
std::uint64_t bell_number(int m);

/// Signed Möbius weight of the partition lattice between `partition` and the
/// finest partition: (-1)^(m-#blocks) * prod over blocks (|block|-1)!.
/// Exact in 64-bit for every supported m.
std::int64_t mobius_coefficient(const SetPartition& partition);

/// True iff every block of `fine` lies inside some block of `coarse`
/// (refinement order; reflexive). Throws GroundSetMismatch on different
/// ground-set sizes.
bool is_refinement(const SetPartition& fine, const SetPartition& coarse);

/// Möbius function of the interval [fine, coarse] in the partition lattice:
/// (-1)^(#blocks(fine)-#blocks(coarse)) * prod over blocks C of coarse of
/// (k_C - 1)! with k_C = number of fine-blocks inside C. Requires
/// is_refinement(fine, coarse), else NotRefinement.
std::int64_t mobius_pair(const SetPartition& fine, const SetPartition& coarse);

/// Sparsification survivor test: true iff no block contains two distinct
/// indices that appear together in any signature tuple — equivalently, every
/// block meets every tuple's index set in at most one element. With entries at
/// repeated coordinates zeroed out of the tensors, partitions failing this
/// test contribute nothing and are skipped.
bool passes_sparsification(const SetPartition& partition,
                           const std::vector<IndexTuple>& signature);

/// Streams only the sparsification survivors of a signature, in the same
/// lexicographic order, with the pair test fused into enumeration.
class SparsifiedPartitionStream {
  public:
    SparsifiedPartitionStream(int m, const std::vector<IndexTuple>& signature);

    bool next(SetPartition& out);
    std::size_t next_chunk(std::vector<SetPartition>& chunk, std::size_t max_count);

    /// Partitions seen so far, survivors or not (equals the Bell number once
    /// the stream is exhausted).
    std::uint64_t enumerated() const { return enumerated_; }

  private:
    PartitionStream stream_;
    std::vector<std::pair<int, int>> forbidden_pairs_;  // distinct co-occurring index pairs
    std::uint64_t enumerated_ = 0;
};

/// Relabels every tuple index by its block, yielding the notation whose full
/// contraction is the partition-restricted statistic's sum. Output is empty;
/// indices of the result are block labels (smallest-member order). Tuples may
/// acquire repeated labels when the partition merges co-occurring indices —
/// those read tensor diagonals, which sparsified tensors turn into zeros.
std::vector<IndexTuple> induced_signature(const std::vector<IndexTuple>& signature,
                                          const SetPartition& partition);

}  // namespace ustats
