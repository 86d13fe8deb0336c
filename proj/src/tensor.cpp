#include "ustats/tensor.hpp"

#include <string>

#include "ustats/errors.hpp"

namespace ustats {

std::uint64_t checked_entry_count(int order, int extent, const Config& config) {
    if (order < 0) fail(ErrorCode::InvalidArgument, "tensor order must be >= 0");
    if (extent < 1) fail(ErrorCode::InvalidArgument, "tensor extent must be >= 1");
    unsigned __int128 entries = 1;
    for (int i = 0; i < order; ++i) {
        entries *= static_cast<unsigned __int128>(extent);
        if (entries > config.memory_cap_entries) {
            fail(ErrorCode::MemoryCapExceeded,
                 "tensor of order " + std::to_string(order) + " at extent " +
                     std::to_string(extent) + " exceeds the cap of " +
                     std::to_string(config.memory_cap_entries) + " entries");
        }
    }
    return static_cast<std::uint64_t>(entries);
}

DenseTensor::DenseTensor(int order_, int extent_, const Config& config)
    : order(order_), extent(extent_), data(checked_entry_count(order_, extent_, config), 0.0) {}

std::uint64_t DenseTensor::offset_of(std::span<const int> index) const {
    std::uint64_t off = 0;
    for (int i = 0; i < order; ++i) off = off * static_cast<std::uint64_t>(extent) + index[i];
    return off;
}

bool next_multi_index(std::span<int> index, int extent) {
    for (int axis = static_cast<int>(index.size()) - 1; axis >= 0; --axis) {
        if (++index[axis] < extent) return true;
        index[axis] = 0;
    }
    return false;
}

DenseTensor tensor_from_function(int order, int extent,
                                 const std::function<double(std::span<const int>)>& fn,
                                 const Config& config) {
    DenseTensor t(order, extent, config);
    std::vector<int> index(order, 0);
    std::uint64_t flat = 0;
    do {
        t.data[flat++] = fn(index);
    } while (next_multi_index(index, extent));
    return t;
}

DenseTensor sparsify(const DenseTensor& t) {
    DenseTensor out = t;
    if (t.order < 2) return out;
    const std::uint64_t n = static_cast<std::uint64_t>(t.extent);
    if (t.order == 2) {
        for (std::uint64_t i = 0; i < n; ++i) out.data[i * n + i] = 0.0;
        return out;
    }
    std::vector<int> index(t.order, 0);
    std::uint64_t flat = 0;
    do {
        bool repeated = false;
        for (int i = 0; i < t.order && !repeated; ++i)
            for (int j = i + 1; j < t.order; ++j)
                if (index[i] == index[j]) {
                    repeated = true;
                    break;
                }
        if (repeated) out.data[flat] = 0.0;
        ++flat;
    } while (next_multi_index(index, t.extent));
    return out;
}

}  // namespace ustats
