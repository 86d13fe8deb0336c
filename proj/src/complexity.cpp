#include "ustats/complexity.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "ustats/errors.hpp"
#include "ustats/graph.hpp"
#include "ustats/partition.hpp"
#include "ustats/treewidth.hpp"

namespace ustats {

namespace {

/// Non-negative big integer in base 1e9, little-endian limbs. Just enough
/// arithmetic to accumulate sum-of-count*power cost terms exactly.
struct BigNat {
    std::vector<std::uint32_t> limbs;  // empty means 0

    static BigNat from(std::uint64_t v) {
        BigNat b;
        while (v > 0) {
            b.limbs.push_back(static_cast<std::uint32_t>(v % 1000000000u));
            v /= 1000000000u;
        }
        return b;
    }

    void mul_small(std::uint64_t factor) {
        if (factor == 0) {
            limbs.clear();
            return;
        }
        unsigned __int128 carry = 0;
        for (std::uint32_t& limb : limbs) {
            unsigned __int128 cur = static_cast<unsigned __int128>(limb) * factor + carry;
            limb = static_cast<std::uint32_t>(cur % 1000000000u);
            carry = cur / 1000000000u;
        }
        while (carry > 0) {
            limbs.push_back(static_cast<std::uint32_t>(carry % 1000000000u));
            carry /= 1000000000u;
        }
    }

    void add(const BigNat& other) {
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < std::max(limbs.size(), other.limbs.size()) || carry; ++i) {
            if (i == limbs.size()) limbs.push_back(0);
            std::uint64_t cur = carry + limbs[i] + (i < other.limbs.size() ? other.limbs[i] : 0);
            limbs[i] = static_cast<std::uint32_t>(cur % 1000000000u);
            carry = cur / 1000000000u;
        }
    }

    std::string str() const {
        if (limbs.empty()) return "0";
        std::string s = std::to_string(limbs.back());
        for (std::size_t i = limbs.size() - 1; i-- > 0;) {
            std::string part = std::to_string(limbs[i]);
            s += std::string(9 - part.size(), '0') + part;
        }
        return s;
    }
};

BigNat big_power(std::uint64_t base, int exp) {
    BigNat b = BigNat::from(1);
    for (int i = 0; i < exp; ++i) b.mul_small(base);
    return b;
}

}  // namespace

ComplexityReport complexity_report(const std::vector<IndexTuple>& signature, int extent,
                                   const Config& config) {
    if (extent < 1) fail(ErrorCode::InvalidArgument, "extent must be >= 1");
    EinsumNotation notation = validate_notation(signature);
    const int m = notation.index_count;

    ComplexityReport report;
    report.signature = notation.inputs;
    report.index_count = m;
    report.extent = extent;

    SimpleGraph graph = decomposition_graph(notation);
    report.graph_vertices = graph.vertex_count();
    report.graph_edges = graph.edge_count();
    report.treewidth_lower = degeneracy(graph);
    report.treewidth_upper =
        std::min(treewidth_upper(graph, EliminationHeuristic::MinFill).width,
                 treewidth_upper(graph, EliminationHeuristic::MinDegree).width);
    if (m <= config.exact_treewidth_bound)
        report.treewidth_exact = treewidth_exact(graph, config).width;

    // Quotients never exceed m vertices, so solve them exactly.
    Config quotient_config = config;
    quotient_config.exact_treewidth_bound = std::max(config.exact_treewidth_bound, m);

    SparsifiedPartitionStream stream(m, notation.inputs);
    SetPartition partition;
    while (stream.next(partition)) {
        SimpleGraph quotient = quotient_graph(graph, partition);
        int width = treewidth_exact(quotient, quotient_config).width;
        ++report.count_by_width[width];
        ++report.sparsified_count;
    }
    report.bell_count = stream.enumerated();
    if (report.bell_count != bell_number(m))
        fail(ErrorCode::InvalidArgument, "partition stream enumerated an unexpected count");

    report.max_quotient_width = report.count_by_width.empty()
                                    ? 0
                                    : report.count_by_width.rbegin()->first;

    BigNat flops;
    for (const auto& [width, count] : report.count_by_width) {
        BigNat term = big_power(static_cast<std::uint64_t>(extent), width + 1);
        term.mul_small(count);
        flops.add(term);
    }
    flops.mul_small(notation.inputs.size());
    report.flops_estimate = flops.str();
    return report;
}

std::vector<IndexTuple> chain_signature(int m) {
    if (m < 2) fail(ErrorCode::InvalidArgument, "chain signature needs order >= 2");
    std::vector<IndexTuple> sig;
    sig.reserve(static_cast<std::size_t>(m - 1));
    for (int i = 1; i < m; ++i) sig.push_back({i, i + 1});
    return sig;
}

}  // namespace ustats
