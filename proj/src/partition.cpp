#include "ustats/partition.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "ustats/errors.hpp"

namespace ustats {

namespace {

constexpr int kMaxEnumerationOrder = 14;

std::int64_t factorial(int k) {
    std::int64_t f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

SetPartition::SetPartition(std::vector<int> rgs) : rgs_(std::move(rgs)) {
    if (rgs_.empty()) fail(ErrorCode::InvalidArgument, "partition of an empty ground set");
    int max_label = -1;
    for (std::size_t i = 0; i < rgs_.size(); ++i) {
        if (rgs_[i] < 0 || rgs_[i] > max_label + 1)
            fail(ErrorCode::InvalidArgument,
                 "not a restricted-growth string at position " + std::to_string(i));
        max_label = std::max(max_label, rgs_[i]);
    }
    blocks_ = max_label + 1;
}

SetPartition SetPartition::finest(int m) {
    std::vector<int> rgs(m);
    for (int i = 0; i < m; ++i) rgs[i] = i;
    return SetPartition(std::move(rgs));
}

SetPartition SetPartition::coarsest(int m) { return SetPartition(std::vector<int>(m, 0)); }

SetPartition SetPartition::from_blocks(int m, const std::vector<std::vector<int>>& blocks) {
    std::vector<int> assignment(m, -1);
    for (const auto& block : blocks) {
        if (block.empty()) fail(ErrorCode::InvalidArgument, "empty block");
        for (int e : block) {
            if (e < 0 || e >= m) fail(ErrorCode::InvalidArgument, "block element outside ground set");
            if (assignment[e] != -1) fail(ErrorCode::InvalidArgument, "element in two blocks");
            assignment[e] = 1;
        }
    }
    for (int e = 0; e < m; ++e)
        if (assignment[e] == -1) fail(ErrorCode::InvalidArgument, "element missing from all blocks");

    // Relabel blocks by smallest member to obtain the restricted-growth form.
    std::vector<std::pair<int, const std::vector<int>*>> ordered;
    ordered.reserve(blocks.size());
    for (const auto& block : blocks)
        ordered.emplace_back(*std::min_element(block.begin(), block.end()), &block);
    std::sort(ordered.begin(), ordered.end());
    std::vector<int> rgs(m, 0);
    for (std::size_t label = 0; label < ordered.size(); ++label)
        for (int e : *ordered[label].second) rgs[e] = static_cast<int>(label);
    return SetPartition(std::move(rgs));
}

std::vector<std::vector<int>> SetPartition::blocks() const {
    std::vector<std::vector<int>> out(blocks_);
    for (std::size_t i = 0; i < rgs_.size(); ++i) out[rgs_[i]].push_back(static_cast<int>(i));
    return out;
}

PartitionStream::PartitionStream(int m) {
    if (m < 1 || m > kMaxEnumerationOrder)
        fail(ErrorCode::OrderTooLarge, "partition enumeration supports ground sets of 1.." +
                                           std::to_string(kMaxEnumerationOrder) + " elements, got " +
                                           std::to_string(m));
    rgs_.assign(m, 0);
    prefix_max_.assign(m, 0);  // prefix_max_[i] = max(rgs_[0..i-1]); entry 0 unused
}

bool PartitionStream::advance() {
    const int m = static_cast<int>(rgs_.size());
    for (int i = m - 1; i >= 1; --i) {
        if (rgs_[i] <= prefix_max_[i]) {
            ++rgs_[i];
            int running = std::max(prefix_max_[i], rgs_[i]);
            for (int j = i + 1; j < m; ++j) {
                rgs_[j] = 0;
                prefix_max_[j] = running;
            }
            return true;
        }
    }
    return false;
}

bool PartitionStream::next(SetPartition& out) {
    if (exhausted_) return false;
    if (first_) {
        first_ = false;
    } else if (!advance()) {
        exhausted_ = true;
        return false;
    }
    out = SetPartition(rgs_);
    return true;
}

std::size_t PartitionStream::next_chunk(std::vector<SetPartition>& chunk, std::size_t max_count) {
    chunk.clear();
    SetPartition p;
    while (chunk.size() < max_count && next(p)) chunk.push_back(p);
    return chunk.size();
}

std::uint64_t bell_number(int m) {
    if (m < 0 || m > 15)
        fail(ErrorCode::InvalidArgument, "Bell numbers supported for 0 <= m <= 15");
    // Bell triangle; bell[i] is the first entry of triangle row i.
    static const std::array<std::uint64_t, 16> table = [] {
        std::array<std::uint64_t, 16> bell{};
        bell[0] = 1;
        std::vector<std::uint64_t> row{1};
        for (int i = 1; i <= 15; ++i) {
            std::vector<std::uint64_t> next_row(row.size() + 1);
            next_row[0] = row.back();
            for (std::size_t j = 0; j < row.size(); ++j) next_row[j + 1] = next_row[j] + row[j];
            bell[i] = next_row[0];
            row = std::move(next_row);
        }
        return bell;
    }();
    return table[m];
}

std::int64_t mobius_coefficient(const SetPartition& partition) {
    std::vector<int> block_sizes(partition.block_count(), 0);
    for (int e = 0; e < partition.ground_size(); ++e) ++block_sizes[partition.block_of(e)];
    std::int64_t mu = ((partition.ground_size() - partition.block_count()) % 2 == 0) ? 1 : -1;
    for (int size : block_sizes) mu *= factorial(size - 1);
    return mu;
}

bool is_refinement(const SetPartition& fine, const SetPartition& coarse) {
    if (fine.ground_size() != coarse.ground_size())
        fail(ErrorCode::GroundSetMismatch, "partitions over different ground sets");
    std::vector<int> image(fine.block_count(), -1);  // fine block -> coarse block
    for (int e = 0; e < fine.ground_size(); ++e) {
        int fb = fine.block_of(e);
        int cb = coarse.block_of(e);
        if (image[fb] == -1)
            image[fb] = cb;
        else if (image[fb] != cb)
            return false;
    }
    return true;
}

std::int64_t mobius_pair(const SetPartition& fine, const SetPartition& coarse) {
    if (!is_refinement(fine, coarse))
        fail(ErrorCode::NotRefinement, "mobius_pair requires the first partition to refine the second");
    // Count fine-blocks inside each coarse block.
    std::vector<int> nested(coarse.block_count(), 0);
    std::vector<bool> counted(fine.block_count(), false);
    for (int e = 0; e < fine.ground_size(); ++e) {
        int fb = fine.block_of(e);
        if (!counted[fb]) {
            counted[fb] = true;
            ++nested[coarse.block_of(e)];
        }
    }
    std::int64_t mu = ((fine.block_count() - coarse.block_count()) % 2 == 0) ? 1 : -1;
    for (int k : nested) mu *= factorial(k - 1);
    return mu;
}

namespace {

std::vector<std::pair<int, int>> cooccurring_pairs(const std::vector<IndexTuple>& signature,
                                                   int ground_size) {
    std::vector<std::pair<int, int>> pairs;
    for (const IndexTuple& tuple : signature) {
        for (int idx : tuple)
            if (idx < 0 || idx >= ground_size)
                fail(ErrorCode::GroundSetMismatch,
                     "signature index " + std::to_string(idx) +
                         " outside the partition ground set of size " + std::to_string(ground_size));
        for (std::size_t i = 0; i < tuple.size(); ++i)
            for (std::size_t j = i + 1; j < tuple.size(); ++j)
                if (tuple[i] != tuple[j])
                    pairs.emplace_back(std::min(tuple[i], tuple[j]),
                                       std::max(tuple[i], tuple[j]));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

}  // namespace

bool passes_sparsification(const SetPartition& partition,
                           const std::vector<IndexTuple>& signature) {
    for (auto [a, b] : cooccurring_pairs(signature, partition.ground_size()))
        if (partition.block_of(a) == partition.block_of(b)) return false;
    return true;
}

SparsifiedPartitionStream::SparsifiedPartitionStream(int m,
                                                     const std::vector<IndexTuple>& signature)
    : stream_(m), forbidden_pairs_(cooccurring_pairs(signature, m)) {}

bool SparsifiedPartitionStream::next(SetPartition& out) {
    while (stream_.next(out)) {
        ++enumerated_;
        bool ok = true;
        for (auto [a, b] : forbidden_pairs_)
            if (out.block_of(a) == out.block_of(b)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

std::size_t SparsifiedPartitionStream::next_chunk(std::vector<SetPartition>& chunk,
                                                  std::size_t max_count) {
    chunk.clear();
    SetPartition p;
    while (chunk.size() < max_count && next(p)) chunk.push_back(p);
    return chunk.size();
}

std::vector<IndexTuple> induced_signature(const std::vector<IndexTuple>& signature,
                                          const SetPartition& partition) {
    std::vector<IndexTuple> induced;
    induced.reserve(signature.size());
    for (const IndexTuple& tuple : signature) {
        IndexTuple mapped;
        mapped.reserve(tuple.size());
        for (int idx : tuple) {
            if (idx < 0 || idx >= partition.ground_size())
                fail(ErrorCode::GroundSetMismatch,
                     "signature index " + std::to_string(idx) +
                         " outside the partition ground set of size " +
                         std::to_string(partition.ground_size()));
            mapped.push_back(partition.block_of(idx));
        }
        induced.push_back(std::move(mapped));
    }
    return induced;
}

}  // namespace ustats
