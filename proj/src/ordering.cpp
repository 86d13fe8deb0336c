#include "ustats/ordering.hpp"

#include <algorithm>
#include <string>

#include "ustats/errors.hpp"
#include "ustats/graph.hpp"
#include "ustats/treewidth.hpp"

namespace ustats {

namespace {

std::uint64_t saturating_power(int base, int exponent) {
    unsigned __int128 value = 1;
    for (int i = 0; i < exponent; ++i) {
        value *= static_cast<unsigned __int128>(base);
        if (value > ~std::uint64_t{0}) return ~std::uint64_t{0};
    }
    return static_cast<std::uint64_t>(value);
}

void check_permutation(const std::vector<int>& order, int index_count) {
    if (static_cast<int>(order.size()) != index_count)
        fail(ErrorCode::InvalidArgument, "elimination order must cover all " +
                                             std::to_string(index_count) + " indices");
    std::vector<bool> seen(index_count, false);
    for (int v : order) {
        if (v < 0 || v >= index_count || seen[v])
            fail(ErrorCode::InvalidArgument, "elimination order is not a permutation");
        seen[v] = true;
    }
}

}  // namespace

int simulate_elimination_width(const EinsumNotation& notation, const std::vector<int>& order) {
    check_permutation(order, notation.index_count);
    SimpleGraph g = decomposition_graph(notation);
    int width = 0;
    for (int v : order) {
        width = std::max(width, g.degree(v));
        g = eliminate_vertex(g, v);
    }
    return width;
}

EliminationOrder optimize_order(const EinsumNotation& notation, int extent,
                                OrderStrategy strategy, const Config& config) {
    if (extent < 1) fail(ErrorCode::InvalidArgument, "extent must be >= 1");
    if (strategy == OrderStrategy::Auto) {
        strategy = notation.index_count <= config.exhaustive_index_bound
                       ? OrderStrategy::Exhaustive
                       : OrderStrategy::GreedyMinFill;
    }

    const SimpleGraph g = decomposition_graph(notation);
    TreewidthResult tw;
    switch (strategy) {
        case OrderStrategy::GreedyMinDegree:
            tw = treewidth_upper(g, EliminationHeuristic::MinDegree);
            break;
        case OrderStrategy::GreedyMinFill:
            tw = treewidth_upper(g, EliminationHeuristic::MinFill);
            break;
        case OrderStrategy::Exhaustive: {
            if (notation.index_count > config.exhaustive_index_bound)
                fail(ErrorCode::TooLargeForExhaustive,
                     "exhaustive order search limited to " +
                         std::to_string(config.exhaustive_index_bound) + " indices, got " +
                         std::to_string(notation.index_count));
            Config exact = config;
            exact.exact_treewidth_bound = config.exhaustive_index_bound;
            tw = treewidth_exact(g, exact);
            break;
        }
        case OrderStrategy::Auto:
            break;  // unreachable; resolved above
    }

    EliminationOrder order;
    order.order = std::move(tw.order);
    order.predicted_width = tw.width;
    order.predicted_peak_entries = saturating_power(extent, tw.width + 1);
    return order;
}

}  // namespace ustats
