#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ustats/config.hpp"

namespace ustats {

/// Dense tensor with a shared extent along every axis, stored row-major
/// (last axis fastest). Order 0 is a scalar holding exactly one entry.
/// Scalars are IEEE f64 throughout the library; comparisons in tests use
/// relative tolerances rather than exact equality.
struct DenseTensor {
    int order = 0;                 ///< number of axes (>= 0)
    int extent = 1;                ///< shared axis length n (>= 1)
    std::vector<double> data;      ///< extent^order entries, row-major

    DenseTensor() : data(1, 0.0) {}
    DenseTensor(int order_, int extent_, const Config& config = {});

    std::uint64_t entry_count() const { return data.size(); }

    /// Flat offset of a multi-index (size must equal order).
    std::uint64_t offset_of(std::span<const int> index) const;

    double at(std::span<const int> index) const { return data[offset_of(index)]; }
    double& at(std::span<const int> index) { return data[offset_of(index)]; }

    /// Scalar value of an order-0 tensor.
    double scalar() const { return data[0]; }
};

/// Number of entries of an (order, extent) tensor, checked against the
/// configured cap. Throws MemoryCapExceeded.
std::uint64_t checked_entry_count(int order, int extent, const Config& config);

/// Materializes T(alpha) = fn(alpha) for every multi-index alpha in
/// [0,extent)^order. Throws MemoryCapExceeded before allocating anything
/// beyond the cap; InvalidArgument for negative order or extent < 1.
DenseTensor tensor_from_function(int order, int extent,
                                 const std::function<double(std::span<const int>)>& fn,
                                 const Config& config = {});

/// Copy of `t` with every entry whose multi-index has a repeated coordinate
/// set to zero (for order 2 this zeroes the diagonal). This is the
/// sparsification that makes off-lattice tuples drop out of the inclusion-
/// exclusion over partitions.
DenseTensor sparsify(const DenseTensor& t);

/// Advances a row-major multi-index; returns false after the last one.
bool next_multi_index(std::span<int> index, int extent);

}  // namespace ustats
