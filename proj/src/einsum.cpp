#include "ustats/einsum.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <thread>

#include "ustats/errors.hpp"

namespace ustats {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using MutMap = Eigen::Map<RowMat>;

/// A live operand: either a view of caller memory or an owned intermediate.
/// Tuples here always carry pairwise-distinct indices.
struct Slot {
    std::shared_ptr<DenseTensor> owned;  // null for views
    const DenseTensor* tensor = nullptr;
    IndexTuple tuple;

    int order() const { return tensor->order; }
};

Slot make_view(const DenseTensor& t, IndexTuple tuple) {
    return Slot{nullptr, &t, std::move(tuple)};
}

Slot make_owned(DenseTensor&& t, IndexTuple tuple, ExecStats* stats) {
    auto owned = std::make_shared<DenseTensor>(std::move(t));
    if (stats)
        stats->peak_intermediate_entries =
            std::max(stats->peak_intermediate_entries, owned->entry_count());
    Slot s{owned, owned.get(), std::move(tuple)};
    return s;
}

std::uint64_t power(std::uint64_t base, int exp) {
    std::uint64_t v = 1;
    while (exp-- > 0) v *= base;
    return v;
}

/// Stride of `id` inside a slot's row-major layout.
std::uint64_t stride_of(const Slot& s, int id, int extent) {
    for (int p = 0; p < static_cast<int>(s.tuple.size()); ++p)
        if (s.tuple[p] == id) return power(extent, static_cast<int>(s.tuple.size()) - 1 - p);
    return 0;
}

void run_chunks(int threads, std::uint64_t total,
                const std::function<void(std::uint64_t, std::uint64_t)>& body) {
    if (threads <= 1 || total < 8192) {
        body(0, total);
        return;
    }
    std::uint64_t workers = std::min<std::uint64_t>(threads, total);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
        std::uint64_t begin = total * w / workers;
        std::uint64_t end = total * (w + 1) / workers;
        pool.emplace_back(body, begin, end);
    }
    for (auto& t : pool) t.join();
}

/// Incremental odometer over a row-major digit space, tracking one flat offset
/// per source tensor (digit d contributing deltas[s][d] to source s).
class Walker {
  public:
    Walker(int digits, int extent, std::vector<std::vector<std::uint64_t>> deltas,
           std::uint64_t start_flat)
        : extent_(extent), digits_(digits), deltas_(std::move(deltas)),
          digit_(digits, 0), offsets_(deltas_.size(), 0) {
        std::uint64_t rem = start_flat;
        for (int d = digits_ - 1; d >= 0; --d) {
            digit_[d] = static_cast<int>(rem % extent_);
            rem /= extent_;
        }
        for (std::size_t s = 0; s < deltas_.size(); ++s)
            for (int d = 0; d < digits_; ++d)
                offsets_[s] += deltas_[s][d] * static_cast<std::uint64_t>(digit_[d]);
    }

    std::uint64_t offset(std::size_t source) const { return offsets_[source]; }

    void advance() {
        for (int d = digits_ - 1; d >= 0; --d) {
            if (++digit_[d] < extent_) {
                for (std::size_t s = 0; s < deltas_.size(); ++s) offsets_[s] += deltas_[s][d];
                return;
            }
            digit_[d] = 0;
            for (std::size_t s = 0; s < deltas_.size(); ++s)
                offsets_[s] -= deltas_[s][d] * static_cast<std::uint64_t>(extent_ - 1);
        }
    }

  private:
    int extent_;
    int digits_;
    std::vector<std::vector<std::uint64_t>> deltas_;
    std::vector<int> digit_;
    std::vector<std::uint64_t> offsets_;
};

/// Rearranges a slot's data into the axis order `target` (a permutation of the
/// slot's ids). Returns a bare tensor; caller wraps it.
DenseTensor permuted_copy(const Slot& s, const IndexTuple& target, int extent,
                          const Config& config) {
    DenseTensor out(static_cast<int>(target.size()), extent, config);
    std::vector<std::vector<std::uint64_t>> deltas(1);
    deltas[0].reserve(target.size());
    for (int id : target) deltas[0].push_back(stride_of(s, id, extent));
    const double* src = s.tensor->data.data();
    double* dst = out.data.data();
    run_chunks(config.effective_threads(), out.entry_count(),
               [&](std::uint64_t begin, std::uint64_t end) {
                   Walker w(static_cast<int>(target.size()), extent, deltas, begin);
                   for (std::uint64_t f = begin; f < end; ++f, w.advance()) dst[f] = src[w.offset(0)];
               });
    return out;
}

/// target *= source, broadcasting source over the axes it lacks
/// (source ids must be a subset of target ids). Target must be owned.
void fold_into(Slot& target, const Slot& source, int extent, const Config& config,
               ExecStats* stats) {
    std::vector<std::vector<std::uint64_t>> deltas(1);
    deltas[0].reserve(target.tuple.size());
    for (int id : target.tuple) deltas[0].push_back(stride_of(source, id, extent));
    const double* src = source.tensor->data.data();
    double* dst = target.owned->data.data();
    run_chunks(config.effective_threads(), target.owned->entry_count(),
               [&](std::uint64_t begin, std::uint64_t end) {
                   Walker w(static_cast<int>(target.tuple.size()), extent, deltas, begin);
                   for (std::uint64_t f = begin; f < end; ++f, w.advance()) dst[f] *= src[w.offset(0)];
               });
    if (stats) stats->multiply_adds += target.owned->entry_count();
}

/// Sums one slot over a subset of its ids; kept ids stay in tuple order.
Slot marginalize(const Slot& s, const std::vector<int>& summed_ids, int extent,
                 const Config& config, ExecStats* stats) {
    IndexTuple kept;
    for (int id : s.tuple)
        if (std::find(summed_ids.begin(), summed_ids.end(), id) == summed_ids.end())
            kept.push_back(id);

    DenseTensor out(static_cast<int>(kept.size()), extent, config);
    std::vector<std::vector<std::uint64_t>> outer(1), inner(1);
    for (int id : kept) outer[0].push_back(stride_of(s, id, extent));
    for (int id : summed_ids) inner[0].push_back(stride_of(s, id, extent));

    const double* src = s.tensor->data.data();
    double* dst = out.data.data();
    const std::uint64_t inner_total = power(extent, static_cast<int>(summed_ids.size()));
    run_chunks(config.effective_threads(), out.entry_count(),
               [&](std::uint64_t begin, std::uint64_t end) {
                   Walker w(static_cast<int>(kept.size()), extent, outer, begin);
                   for (std::uint64_t f = begin; f < end; ++f, w.advance()) {
                       Walker wi(static_cast<int>(summed_ids.size()), extent, inner, 0);
                       double acc = 0.0;
                       for (std::uint64_t g = 0; g < inner_total; ++g, wi.advance())
                           acc += src[w.offset(0) + wi.offset(0)];
                       dst[f] = acc;
                   }
               });
    if (stats) stats->multiply_adds += s.tensor->entry_count();
    return make_owned(std::move(out), std::move(kept), stats);
}

/// Extracts the diagonal of a slot whose tuple repeats ids: the result tuple
/// keeps the distinct ids in first-occurrence order, and repeated axes read a
/// shared coordinate.
Slot extract_diagonal(const Slot& s, int extent, const Config& config, ExecStats* stats) {
    IndexTuple distinct;
    for (int id : s.tuple)
        if (std::find(distinct.begin(), distinct.end(), id) == distinct.end())
            distinct.push_back(id);

    std::vector<std::vector<std::uint64_t>> deltas(1);
    deltas[0].assign(distinct.size(), 0);
    // A repeated id's coordinate feeds every axis carrying it.
    for (int p = 0; p < static_cast<int>(s.tuple.size()); ++p) {
        auto at = std::find(distinct.begin(), distinct.end(), s.tuple[p]) - distinct.begin();
        deltas[0][at] += power(extent, static_cast<int>(s.tuple.size()) - 1 - p);
    }

    DenseTensor out(static_cast<int>(distinct.size()), extent, config);
    const double* src = s.tensor->data.data();
    double* dst = out.data.data();
    run_chunks(config.effective_threads(), out.entry_count(),
               [&](std::uint64_t begin, std::uint64_t end) {
                   Walker w(static_cast<int>(distinct.size()), extent, deltas, begin);
                   for (std::uint64_t f = begin; f < end; ++f, w.advance()) dst[f] = src[w.offset(0)];
               });
    return make_owned(std::move(out), std::move(distinct), stats);
}

/// Matrix-product lowering for two slots that share exactly the eliminated id.
Slot gemm_step(const Slot& a, const Slot& b, int e, int extent, const Config& config,
               ExecStats* stats) {
    IndexTuple rest_a, rest_b;
    for (int id : a.tuple)
        if (id != e) rest_a.push_back(id);
    for (int id : b.tuple)
        if (id != e) rest_b.push_back(id);
    std::sort(rest_a.begin(), rest_a.end());
    std::sort(rest_b.begin(), rest_b.end());

    IndexTuple layout_a = rest_a;
    layout_a.push_back(e);
    IndexTuple layout_b;
    layout_b.push_back(e);
    layout_b.insert(layout_b.end(), rest_b.begin(), rest_b.end());

    DenseTensor a2 = permuted_copy(a, layout_a, extent, config);
    DenseTensor b2 = permuted_copy(b, layout_b, extent, config);

    const auto rows = static_cast<Eigen::Index>(power(extent, static_cast<int>(rest_a.size())));
    const auto cols = static_cast<Eigen::Index>(power(extent, static_cast<int>(rest_b.size())));
    const auto inner = static_cast<Eigen::Index>(extent);

    IndexTuple out_tuple = rest_a;
    out_tuple.insert(out_tuple.end(), rest_b.begin(), rest_b.end());
    DenseTensor out(static_cast<int>(out_tuple.size()), extent, config);

    ConstMap ma(a2.data.data(), rows, inner);
    ConstMap mb(b2.data.data(), inner, cols);
    MutMap mc(out.data.data(), rows, cols);

    int threads = config.effective_threads();
    if (threads <= 1 || rows < 2 * threads) {
        mc.noalias() = ma * mb;
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            Eigen::Index begin = rows * w / threads;
            Eigen::Index end = rows * (w + 1) / threads;
            pool.emplace_back([&, begin, end] {
                mc.middleRows(begin, end - begin).noalias() =
                    ma.middleRows(begin, end - begin) * mb;
            });
        }
        for (auto& t : pool) t.join();
    }
    if (stats)
        stats->multiply_adds += static_cast<std::uint64_t>(rows) * inner * cols;
    return make_owned(std::move(out), std::move(out_tuple), stats);
}

/// General multi-operand elimination of `e`: output over the ascending union
/// of the other ids, inner sum over e of the product of all operands.
Slot generic_step(const std::vector<Slot>& parts, int e, int extent, const Config& config,
                  ExecStats* stats) {
    std::set<int> union_ids;
    for (const Slot& s : parts)
        for (int id : s.tuple) union_ids.insert(id);
    union_ids.erase(e);
    IndexTuple out_tuple(union_ids.begin(), union_ids.end());

    const std::size_t K = parts.size();
    std::vector<std::vector<std::uint64_t>> deltas(K);
    std::vector<std::uint64_t> estride(K);
    std::vector<const double*> src(K);
    for (std::size_t k = 0; k < K; ++k) {
        for (int id : out_tuple) deltas[k].push_back(stride_of(parts[k], id, extent));
        estride[k] = stride_of(parts[k], e, extent);
        src[k] = parts[k].tensor->data.data();
    }

    DenseTensor out(static_cast<int>(out_tuple.size()), extent, config);
    double* dst = out.data.data();
    run_chunks(config.effective_threads(), out.entry_count(),
               [&](std::uint64_t begin, std::uint64_t end) {
                   Walker w(static_cast<int>(out_tuple.size()), extent, deltas, begin);
                   for (std::uint64_t f = begin; f < end; ++f, w.advance()) {
                       double acc = 0.0;
                       for (int v = 0; v < extent; ++v) {
                           double prod = src[0][w.offset(0) + estride[0] * v];
                           for (std::size_t k = 1; k < K; ++k)
                               prod *= src[k][w.offset(k) + estride[k] * v];
                           acc += prod;
                       }
                       dst[f] = acc;
                   }
               });
    if (stats)
        stats->multiply_adds += out.entry_count() * static_cast<std::uint64_t>(extent) *
                                static_cast<std::uint64_t>(K);
    return make_owned(std::move(out), std::move(out_tuple), stats);
}

bool subset_of(const IndexTuple& small, const IndexTuple& big) {
    for (int id : small)
        if (std::find(big.begin(), big.end(), id) == big.end()) return false;
    return true;
}

/// Contracts all slots containing `e` over `e`, replacing them by one slot.
void eliminate_one(std::vector<Slot>& slots, int e, int extent, const Config& config,
                   ExecStats* stats) {
    std::vector<Slot> parts;
    for (auto it = slots.begin(); it != slots.end();) {
        if (std::find(it->tuple.begin(), it->tuple.end(), e) != it->tuple.end()) {
            parts.push_back(std::move(*it));
            it = slots.erase(it);
        } else {
            ++it;
        }
    }
    if (parts.empty()) return;  // id vanished through an earlier marginalization
    if (stats) ++stats->steps;

    // Fold operands whose ids are a subset of another operand's ids (equal id
    // sets included) — this collapses parallel tuples and absorbs vectors so
    // the two-operand matrix path applies whenever the quotient is locally
    // path- or cycle-like.
    bool folded = true;
    while (folded && parts.size() > 1) {
        folded = false;
        for (std::size_t i = 0; i < parts.size() && !folded; ++i) {
            for (std::size_t j = 0; j < parts.size(); ++j) {
                if (i == j) continue;
                if (parts[i].tuple.size() > parts[j].tuple.size()) continue;
                if (!subset_of(parts[i].tuple, parts[j].tuple)) continue;
                if (!parts[j].owned) {
                    DenseTensor copy = *parts[j].tensor;
                    IndexTuple tuple = parts[j].tuple;
                    parts[j] = make_owned(std::move(copy), std::move(tuple), stats);
                }
                fold_into(parts[j], parts[i], extent, config, stats);
                parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(i));
                folded = true;
                break;
            }
        }
    }

    Slot result;
    if (parts.size() == 1) {
        result = marginalize(parts[0], {e}, extent, config, stats);
    } else if (parts.size() == 2) {
        int shared = 0;
        for (int id : parts[0].tuple)
            if (std::find(parts[1].tuple.begin(), parts[1].tuple.end(), id) !=
                parts[1].tuple.end())
                ++shared;
        if (shared == 1)
            result = gemm_step(parts[0], parts[1], e, extent, config, stats);
        else
            result = generic_step(parts, e, extent, config, stats);
    } else {
        result = generic_step(parts, e, extent, config, stats);
    }
    slots.push_back(std::move(result));
}

}  // namespace

std::pair<DenseTensor, IndexTuple> eliminate_index(std::span<const DenseTensor> tensors,
                                                   const std::vector<IndexTuple>& tuples,
                                                   int index, const Config& config,
                                                   ExecStats* stats) {
    if (tensors.size() != tuples.size() || tensors.empty())
        fail(ErrorCode::ShapeMismatch, "need one tuple per tensor");
    int extent = tensors[0].extent;
    std::vector<Slot> slots;
    for (std::size_t k = 0; k < tensors.size(); ++k) {
        if (tensors[k].extent != extent)
            fail(ErrorCode::ShapeMismatch, "tensors disagree on extent");
        if (tensors[k].order != static_cast<int>(tuples[k].size()))
            fail(ErrorCode::ShapeMismatch, "tensor order does not match its tuple");
        if (std::find(tuples[k].begin(), tuples[k].end(), index) == tuples[k].end())
            fail(ErrorCode::IndexAbsent,
                 "tuple " + std::to_string(k) + " lacks index " + std::to_string(index));
        Slot s = make_view(tensors[k], tuples[k]);
        std::set<int> uniq(tuples[k].begin(), tuples[k].end());
        if (uniq.size() != tuples[k].size()) s = extract_diagonal(s, extent, config, stats);
        slots.push_back(std::move(s));
    }

    eliminate_one(slots, index, extent, config, stats);
    Slot& r = slots.back();
    IndexTuple ascending = r.tuple;
    std::sort(ascending.begin(), ascending.end());
    if (ascending != r.tuple) {
        DenseTensor rearranged = permuted_copy(r, ascending, extent, config);
        return {std::move(rearranged), std::move(ascending)};
    }
    DenseTensor out = r.owned ? std::move(*r.owned) : *r.tensor;
    return {std::move(out), std::move(ascending)};
}

DenseTensor einsum(std::span<const DenseTensor> tensors, const EinsumNotation& notation,
                   const Config& config, const EliminationOrder* order, ExecStats* stats) {
    const std::size_t K = notation.inputs.size();
    if (tensors.size() != K)
        fail(ErrorCode::ShapeMismatch, "notation expects " + std::to_string(K) + " tensors, got " +
                                           std::to_string(tensors.size()));
    if (K == 0) fail(ErrorCode::InvalidNotation, "notation has no inputs");
    const int extent = tensors[0].extent;
    for (std::size_t k = 0; k < K; ++k) {
        if (tensors[k].order != static_cast<int>(notation.inputs[k].size()))
            fail(ErrorCode::ShapeMismatch,
                 "tensor " + std::to_string(k) + " has order " + std::to_string(tensors[k].order) +
                     " but its tuple has " + std::to_string(notation.inputs[k].size()) +
                     " indices");
        if (tensors[k].extent != extent)
            fail(ErrorCode::ShapeMismatch, "tensors disagree on extent");
    }

    // Diagonal pre-pass: repeated ids inside one tuple read that tensor's
    // diagonal; afterwards every live tuple is duplicate-free.
    std::vector<Slot> slots;
    slots.reserve(K);
    for (std::size_t k = 0; k < K; ++k) {
        Slot s = make_view(tensors[k], notation.inputs[k]);
        std::set<int> uniq(s.tuple.begin(), s.tuple.end());
        if (uniq.size() != s.tuple.size()) s = extract_diagonal(s, extent, config, stats);
        slots.push_back(std::move(s));
    }

    // Pure-marginalization pre-pass: a summed id living in exactly one slot
    // never interacts with the others, so sum it away inside its slot first.
    std::map<int, int> occurrences;
    for (const Slot& s : slots)
        for (int id : s.tuple) ++occurrences[id];
    for (Slot& s : slots) {
        std::vector<int> lonely;
        for (int id : s.tuple)
            if (occurrences[id] == 1 && !notation.index_in_output(id)) lonely.push_back(id);
        if (!lonely.empty()) s = marginalize(s, lonely, extent, config, stats);
    }

    // Remaining summed ids fall in elimination-order sequence.
    EliminationOrder chosen;
    if (order == nullptr) {
        chosen = optimize_order(notation, extent, config.strategy, config);
        order = &chosen;
    } else {
        // Must cover the full index set, like any order this layer produces.
        std::vector<bool> seen(notation.index_count, false);
        if (static_cast<int>(order->order.size()) != notation.index_count)
            fail(ErrorCode::InvalidArgument, "elimination order must cover all indices");
        for (int v : order->order) {
            if (v < 0 || v >= notation.index_count || seen[v])
                fail(ErrorCode::InvalidArgument, "elimination order is not a permutation");
            seen[v] = true;
        }
    }
    for (int e : order->order) {
        if (notation.index_in_output(e)) continue;
        eliminate_one(slots, e, extent, config, stats);
    }

    // Assembly: multiply the surviving slots into the requested output layout.
    DenseTensor out(static_cast<int>(notation.output.size()), extent, config);
    std::vector<std::vector<std::uint64_t>> deltas(slots.size());
    std::vector<const double*> src(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) {
        for (int id : notation.output) deltas[s].push_back(stride_of(slots[s], id, extent));
        src[s] = slots[s].tensor->data.data();
    }
    double* dst = out.data.data();
    run_chunks(config.effective_threads(), out.entry_count(),
               [&](std::uint64_t begin, std::uint64_t end) {
                   Walker w(static_cast<int>(notation.output.size()), extent, deltas, begin);
                   for (std::uint64_t f = begin; f < end; ++f, w.advance()) {
                       double prod = 1.0;
                       for (std::size_t s = 0; s < slots.size(); ++s) prod *= src[s][w.offset(s)];
                       dst[f] = prod;
                   }
               });
    if (stats) stats->multiply_adds += out.entry_count() * slots.size();
    return out;
}

}  // namespace ustats
