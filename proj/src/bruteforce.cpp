#include "ustats/bruteforce.hpp"

#include <string>
#include <vector>

#include "ustats/errors.hpp"
#include "ustats/tensor.hpp"

namespace ustats {

namespace {

/// n * (n-1) * ... * (n-m+1), saturating at UINT64_MAX.
std::uint64_t falling_factorial(int n, int m) {
    unsigned __int128 v = 1;
    for (int i = 0; i < m; ++i) {
        v *= static_cast<unsigned>(n - i);
        if (v > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(v);
}

std::uint64_t power_or_saturate(int n, int m) {
    unsigned __int128 v = 1;
    for (int i = 0; i < m; ++i) {
        v *= static_cast<unsigned>(n);
        if (v > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(v);
}

void check_term_count(std::uint64_t count, const Config& config) {
    if (count > config.brute_force_term_cap)
        fail(ErrorCode::TooManyTerms, std::to_string(count) + " terms exceed the cap of " +
                                          std::to_string(config.brute_force_term_cap));
}

/// Sums fn over injective assignments of `slots` values from [0,n), filling
/// `picks` depth-first in lexicographic order.
long double sum_injective(int n, int slots, std::vector<int>& picks, std::vector<char>& used,
                          const std::function<long double(const std::vector<int>&)>& fn) {
    if (static_cast<int>(picks.size()) == slots) return fn(picks);
    long double acc = 0.0L;
    for (int v = 0; v < n; ++v) {
        if (used[static_cast<std::size_t>(v)]) continue;
        used[static_cast<std::size_t>(v)] = 1;
        picks.push_back(v);
        acc += sum_injective(n, slots, picks, used, fn);
        picks.pop_back();
        used[static_cast<std::size_t>(v)] = 0;
    }
    return acc;
}

}  // namespace

double u_brute_force(const FlatKernel& kernel, int arity, const Sample& sample,
                     const Config& config) {
    const int n = sample.size();
    if (arity < 1) fail(ErrorCode::InvalidArgument, "arity must be >= 1");
    if (n < arity)
        fail(ErrorCode::SampleTooSmall, "need at least " + std::to_string(arity) +
                                            " observations, have " + std::to_string(n));
    check_term_count(falling_factorial(n, arity), config);

    std::vector<int> picks;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    long double acc = sum_injective(n, arity, picks, used, [&](const std::vector<int>& idx) {
        return static_cast<long double>(kernel(sample, idx));
    });
    return static_cast<double>(acc);
}

double v_brute_force(const FlatKernel& kernel, int arity, const Sample& sample,
                     const Config& config) {
    const int n = sample.size();
    if (arity < 1) fail(ErrorCode::InvalidArgument, "arity must be >= 1");
    if (n < 1) fail(ErrorCode::InvalidArgument, "sample is empty");
    check_term_count(power_or_saturate(n, arity), config);

    std::vector<int> index(static_cast<std::size_t>(arity), 0);
    long double acc = 0.0L;
    do {
        acc += static_cast<long double>(kernel(sample, index));
    } while (next_multi_index(index, n));
    return static_cast<double>(acc);
}

double restricted_u_brute(const FlatKernel& kernel, int arity, const Sample& sample,
                          const SetPartition& partition, const Config& config) {
    const int n = sample.size();
    if (partition.ground_size() != arity)
        fail(ErrorCode::GroundSetMismatch, "partition does not cover the kernel's slots");
    const int blocks = partition.block_count();
    if (n < blocks)
        fail(ErrorCode::SampleTooSmall, "need at least " + std::to_string(blocks) +
                                            " observations, have " + std::to_string(n));
    check_term_count(falling_factorial(n, blocks), config);

    std::vector<int> picks;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    std::vector<int> index(static_cast<std::size_t>(arity), 0);
    long double acc = sum_injective(n, blocks, picks, used, [&](const std::vector<int>& by_block) {
        for (int slot = 0; slot < arity; ++slot)
            index[static_cast<std::size_t>(slot)] =
                by_block[static_cast<std::size_t>(partition.block_of(slot))];
        return static_cast<long double>(kernel(sample, index));
    });
    return static_cast<double>(acc);
}

FlatKernel flatten(const MDKernel& kernel) {
    kernel.validate();
    return [kernel](const Sample& sample, std::span<const int> indices) {
        return kernel.evaluate(sample, indices);
    };
}

}  // namespace ustats
