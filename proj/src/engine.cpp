#include "ustats/engine.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ustats/errors.hpp"

namespace ustats {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/// Balanced tree summation: fixed association for a fixed term order, so the
/// result is independent of how the terms were produced.
double pairwise_sum(const double* terms, std::size_t count) {
    if (count == 0) return 0.0;
    if (count <= 4) {
        double acc = terms[0];
        for (std::size_t i = 1; i < count; ++i) acc += terms[i];
        return acc;
    }
    std::size_t half = count / 2;
    return pairwise_sum(terms, half) + pairwise_sum(terms + half, count - half);
}

void merge_exec(RunStats& rs, const ExecStats& es) {
    ++rs.einsum_calls;
    rs.multiply_adds += es.multiply_adds;
    rs.peak_intermediate_entries = std::max(rs.peak_intermediate_entries,
                                            es.peak_intermediate_entries);
}

/// Shared core of the two lattice combinations. Streams partitions in fixed
/// chunks, evaluates each term weight * contraction, and accumulates with a
/// per-chunk pairwise tree in enumeration order — deterministic for any
/// thread count, because chunk boundaries do not depend on it.
template <typename Stream>
double lattice_combination(Stream& stream, const std::vector<DenseTensor>& tensors,
                           const std::vector<IndexTuple>& zero_sig, const Config& config,
                           RunStats& rs) {
    constexpr std::size_t kChunk = 512;
    const int threads = config.effective_threads();
    Config worker_config = config;
    worker_config.threads = 1;  // chunk entries already run in parallel

    double total = 0.0;
    std::vector<SetPartition> chunk;
    std::vector<double> terms;
    std::vector<ExecStats> exec;
    const auto t0 = Clock::now();
    for (;;) {
        std::size_t got = stream.next_chunk(chunk, kChunk);
        if (got == 0) break;
        terms.assign(got, 0.0);
        exec.assign(got, ExecStats{});

        auto eval_range = [&](std::size_t begin, std::size_t end, const Config& cfg) {
            for (std::size_t i = begin; i < end; ++i) {
                EinsumNotation notation(induced_signature(zero_sig, chunk[i]));
                double value = einsum(tensors, notation, cfg, nullptr, &exec[i]).scalar();
                terms[i] = static_cast<double>(mobius_coefficient(chunk[i])) * value;
            }
        };

        if (threads > 1 && got > 1) {
            std::size_t workers = std::min<std::size_t>(threads, got);
            std::vector<std::thread> pool;
            std::vector<std::exception_ptr> errors(workers);
            pool.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w) {
                std::size_t begin = got * w / workers;
                std::size_t end = got * (w + 1) / workers;
                pool.emplace_back([&, w, begin, end] {
                    try {
                        eval_range(begin, end, worker_config);
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
            for (auto& t : pool) t.join();
            for (const auto& e : errors)
                if (e) std::rethrow_exception(e);
        } else {
            eval_range(0, got, config);
        }

        for (const ExecStats& es : exec) merge_exec(rs, es);
        rs.partitions_evaluated += got;
        total += pairwise_sum(terms.data(), got);
    }
    rs.contract_seconds += seconds_since(t0);
    return total;
}

}  // namespace

std::vector<DenseTensor> tensorize(const MDKernel& kernel, const Sample& sample,
                                   const Config& config, RunStats* stats) {
    kernel.validate();
    const int n = sample.size();
    if (n < 1) fail(ErrorCode::InvalidArgument, "sample is empty");

    const auto t0 = Clock::now();
    std::vector<DenseTensor> tensors;
    tensors.reserve(kernel.signature.size());
    for (std::size_t k = 0; k < kernel.signature.size(); ++k) {
        const int order = static_cast<int>(kernel.signature[k].size());
        auto fn = [&, k](std::span<const int> alpha) {
            double v;
            try {
                v = kernel.components[k](sample, alpha);
            } catch (const std::exception& e) {
                fail(ErrorCode::ComponentEvaluationError,
                     "component " + std::to_string(k) + " failed: " + e.what());
            }
            if (config.strict_nonfinite && !std::isfinite(v))
                fail(ErrorCode::ComponentEvaluationError,
                     "component " + std::to_string(k) + " returned a non-finite value");
            return v;
        };
        tensors.push_back(tensor_from_function(order, n, fn, config));
    }
    if (stats) stats->tensorize_seconds += seconds_since(t0);
    return tensors;
}

double v_statistic(const MDKernel& kernel, const Sample& sample, const Config& config,
                   RunStats* stats) {
    RunStats local;
    RunStats& rs = stats ? *stats : local;
    std::vector<DenseTensor> tensors = tensorize(kernel, sample, config, &rs);
    EinsumNotation notation(kernel.zero_based_signature());

    const auto t0 = Clock::now();
    ExecStats es;
    double value = einsum(tensors, notation, config, nullptr, &es).scalar();
    rs.contract_seconds += seconds_since(t0);
    merge_exec(rs, es);
    return value;
}

double restricted_v(const MDKernel& kernel, const Sample& sample, const SetPartition& partition,
                    const Config& config, RunStats* stats) {
    kernel.validate();
    if (partition.ground_size() != kernel.arity)
        fail(ErrorCode::GroundSetMismatch,
             "partition ground set has " + std::to_string(partition.ground_size()) +
                 " elements, kernel arity is " + std::to_string(kernel.arity));
    RunStats local;
    RunStats& rs = stats ? *stats : local;
    std::vector<DenseTensor> tensors = tensorize(kernel, sample, config, &rs);
    EinsumNotation notation(induced_signature(kernel.zero_based_signature(), partition));

    const auto t0 = Clock::now();
    ExecStats es;
    double value = einsum(tensors, notation, config, nullptr, &es).scalar();
    rs.contract_seconds += seconds_since(t0);
    merge_exec(rs, es);
    return value;
}

double u_statistic(const MDKernel& kernel, const Sample& sample, const Config& config,
                   RunStats* stats) {
    kernel.validate();
    if (sample.size() < kernel.arity)
        fail(ErrorCode::SampleTooSmall, "need at least " + std::to_string(kernel.arity) +
                                            " observations, have " +
                                            std::to_string(sample.size()));
    RunStats local;
    RunStats& rs = stats ? *stats : local;
    std::vector<DenseTensor> tensors = tensorize(kernel, sample, config, &rs);

    const auto t0 = Clock::now();
    for (DenseTensor& t : tensors) t = sparsify(t);
    rs.tensorize_seconds += seconds_since(t0);

    std::vector<IndexTuple> zero_sig = kernel.zero_based_signature();
    SparsifiedPartitionStream stream(kernel.arity, zero_sig);
    double value = lattice_combination(stream, tensors, zero_sig, config, rs);
    rs.partitions_enumerated += stream.enumerated();
    return value;
}

double u_statistic_unsparsified(const MDKernel& kernel, const Sample& sample,
                                const Config& config, RunStats* stats) {
    kernel.validate();
    if (sample.size() < kernel.arity)
        fail(ErrorCode::SampleTooSmall, "need at least " + std::to_string(kernel.arity) +
                                            " observations, have " +
                                            std::to_string(sample.size()));
    RunStats local;
    RunStats& rs = stats ? *stats : local;
    std::vector<DenseTensor> tensors = tensorize(kernel, sample, config, &rs);

    std::vector<IndexTuple> zero_sig = kernel.zero_based_signature();
    PartitionStream stream(kernel.arity);
    double value = lattice_combination(stream, tensors, zero_sig, config, rs);
    rs.partitions_enumerated += bell_number(kernel.arity);
    return value;
}

}  // namespace ustats
