#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ustats/config.hpp"
#include "ustats/engine.hpp"
#include "ustats/graph.hpp"

namespace ustats {

/// An induced-subgraph pattern on 3 or 4 vertices: which of the C(order,2)
/// vertex pairs must be edges and which must be non-edges, plus the pattern's
/// automorphism count (the overcount factor of the ordered sum).
struct MotifSpec {
    std::string id;          ///< "r1".."r8"
    int order = 0;           ///< 3 or 4
    int automorphisms = 0;
    std::vector<std::pair<int, int>> present;  ///< 1-based pairs that must be edges
    std::vector<std::pair<int, int>> absent;   ///< 1-based pairs that must be non-edges

    /// All C(order,2) pairs with their roles, as an MD kernel over the graph's
    /// adjacency indicator A and co-indicator B = 1 - A (diagonal zero).
    MDKernel kernel(const SimpleGraph& g) const;
};

/// The catalog: r1 = path on 3 vertices, r2 = triangle, r3 = 3-star,
/// r4 = path on 4, r5 = tailed triangle, r6 = 4-cycle, r7 = diamond
/// (K4 minus an edge), r8 = K4.
const std::vector<MotifSpec>& motif_catalog();
const MotifSpec& motif_by_id(const std::string& id);

/// Number of vertex subsets of g inducing the motif: the ordered
/// distinct-index sum of the indicator product, divided by the automorphism
/// count. The result must be an integer; a residue beyond 1e-6 raises
/// NonIntegerResult. Requires contiguous vertex ids 0..n-1 (InvalidArgument).
std::int64_t motif_count(const SimpleGraph& g, const MotifSpec& spec, const Config& config = {},
                         RunStats* stats = nullptr);

}  // namespace ustats
