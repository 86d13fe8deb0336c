#include "ustats/motifs.hpp"

#include <cmath>
#include <memory>
#include <string>

#include "ustats/errors.hpp"

namespace ustats {

MDKernel MotifSpec::kernel(const SimpleGraph& g) const {
    MDKernel kernel;
    kernel.arity = order;
    kernel.name = "motif:" + id;
    auto graph = std::make_shared<SimpleGraph>(g);
    for (const auto& [a, b] : present) {
        kernel.signature.push_back({a, b});
        kernel.components.push_back([graph](const Sample&, std::span<const int> idx) {
            return graph->has_edge(idx[0], idx[1]) ? 1.0 : 0.0;
        });
    }
    for (const auto& [a, b] : absent) {
        kernel.signature.push_back({a, b});
        kernel.components.push_back([graph](const Sample&, std::span<const int> idx) {
            // Co-indicator with zero diagonal: distinct non-adjacent pairs only.
            if (idx[0] == idx[1]) return 0.0;
            return graph->has_edge(idx[0], idx[1]) ? 0.0 : 1.0;
        });
    }
    return kernel;
}

const std::vector<MotifSpec>& motif_catalog() {
    static const std::vector<MotifSpec> catalog = {
        {"r1", 3, 2, {{1, 2}, {2, 3}}, {{1, 3}}},
        {"r2", 3, 6, {{1, 2}, {1, 3}, {2, 3}}, {}},
        {"r3", 4, 6, {{1, 2}, {1, 3}, {1, 4}}, {{2, 3}, {2, 4}, {3, 4}}},
        {"r4", 4, 2, {{1, 2}, {2, 3}, {3, 4}}, {{1, 3}, {1, 4}, {2, 4}}},
        {"r5", 4, 2, {{1, 2}, {1, 3}, {2, 3}, {3, 4}}, {{1, 4}, {2, 4}}},
        {"r6", 4, 8, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}, {{1, 3}, {2, 4}}},
        {"r7", 4, 4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}}, {{3, 4}}},
        {"r8", 4, 24, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}, {}},
    };
    return catalog;
}

const MotifSpec& motif_by_id(const std::string& id) {
    for (const MotifSpec& spec : motif_catalog())
        if (spec.id == id) return spec;
    fail(ErrorCode::InvalidArgument, "unknown motif id '" + id + "' (expected r1..r8)");
}

std::int64_t motif_count(const SimpleGraph& g, const MotifSpec& spec, const Config& config,
                         RunStats* stats) {
    const int n = g.vertex_count();
    for (int v = 0; v < n; ++v)
        if (!g.has_vertex(v))
            fail(ErrorCode::InvalidArgument, "graph vertex ids must be contiguous 0..n-1");
    if (n < spec.order) return 0;

    MDKernel kernel = spec.kernel(g);
    double ordered = u_statistic(kernel, Sample::indices_only(n), config, stats);
    double scaled = ordered / static_cast<double>(spec.automorphisms);
    double rounded = std::nearbyint(scaled);
    if (std::abs(scaled - rounded) > 1e-6)
        fail(ErrorCode::NonIntegerResult,
             "count " + std::to_string(scaled) + " is not an integer");
    return static_cast<std::int64_t>(rounded);
}

}  // namespace ustats
