#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "ustats/config.hpp"
#include "ustats/errors.hpp"
#include "ustats/notation.hpp"
#include "ustats/ordering.hpp"

using ustats::Config;
using ustats::EinsumNotation;
using ustats::Error;
using ustats::IndexTuple;
using ustats::OrderStrategy;

namespace {

EinsumNotation chain_notation(int m) {
    std::vector<IndexTuple> inputs;
    for (int i = 0; i + 1 < m; ++i) inputs.push_back({i, i + 1});
    return ustats::validate_notation(inputs, {});
}

bool is_permutation_of_indices(const std::vector<int>& order, int index_count) {
    if (static_cast<int>(order.size()) != index_count) return false;
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < index_count; ++i)
        if (sorted[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

}  // namespace

TEST_CASE("chains admit width-1 orders at every size") {
    for (int m = 2; m <= 8; ++m) {
        auto chosen = ustats::optimize_order(chain_notation(m), 10, OrderStrategy::Exhaustive);
        CHECK(chosen.predicted_width == 1);
        CHECK(chosen.predicted_peak_entries == 100);  // 10^(1+1)
        CHECK(is_permutation_of_indices(chosen.order, m));
    }
}

TEST_CASE("simulated width agrees with the predicted width") {
    std::vector<EinsumNotation> cases = {
        chain_notation(5),
        ustats::validate_notation({{0, 1}, {1, 2}, {2, 0}}, {}),
        ustats::validate_notation({{0, 1, 2}, {2, 3}, {3, 0}}, {0}),
        ustats::validate_notation({{0, 0, 1}}, {1}),
    };
    for (const auto& notation : cases) {
        for (auto strategy : {OrderStrategy::Exhaustive, OrderStrategy::GreedyMinDegree,
                              OrderStrategy::GreedyMinFill}) {
            auto chosen = ustats::optimize_order(notation, 3, strategy);
            CHECK(is_permutation_of_indices(chosen.order, notation.index_count));
            CHECK(ustats::simulate_elimination_width(notation, chosen.order) ==
                  chosen.predicted_width);
        }
    }
}

TEST_CASE("exhaustive search never loses to the greedy sweeps") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> tuple_count(1, 4);
    std::uniform_int_distribution<int> tuple_len(1, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> pick_index(0, 5);
        std::vector<IndexTuple> inputs;
        std::vector<bool> seen(6, false);
        int k = tuple_count(rng);
        for (int t = 0; t < k; ++t) {
            IndexTuple tuple;
            int len = tuple_len(rng);
            for (int i = 0; i < len; ++i) {
                int id = pick_index(rng);
                tuple.push_back(id);
                seen[static_cast<std::size_t>(id)] = true;
            }
            inputs.push_back(tuple);
        }
        // Remap to a gap-free index set before validating.
        std::vector<int> remap(6, -1);
        int next_id = 0;
        for (int id = 0; id < 6; ++id)
            if (seen[static_cast<std::size_t>(id)]) remap[static_cast<std::size_t>(id)] = next_id++;
        for (auto& tuple : inputs)
            for (int& id : tuple) id = remap[static_cast<std::size_t>(id)];
        auto notation = ustats::validate_notation(inputs, {});

        auto best = ustats::optimize_order(notation, 4, OrderStrategy::Exhaustive);
        for (auto strategy : {OrderStrategy::GreedyMinDegree, OrderStrategy::GreedyMinFill}) {
            auto greedy = ustats::optimize_order(notation, 4, strategy);
            CHECK(best.predicted_width <= greedy.predicted_width);
        }
    }
}

TEST_CASE("auto strategy matches exhaustive within the bound and survives beyond it") {
    auto notation = chain_notation(6);
    auto via_auto = ustats::optimize_order(notation, 5, OrderStrategy::Auto);
    auto via_exhaustive = ustats::optimize_order(notation, 5, OrderStrategy::Exhaustive);
    CHECK(via_auto.order == via_exhaustive.order);
    CHECK(via_auto.predicted_width == via_exhaustive.predicted_width);

    Config tight;
    tight.exhaustive_index_bound = 4;
    CHECK_THROWS_AS(
        ustats::optimize_order(notation, 5, OrderStrategy::Exhaustive, tight), Error);
    auto fallback = ustats::optimize_order(notation, 5, OrderStrategy::Auto, tight);
    CHECK(fallback.predicted_width == 1);  // greedy also solves a path
}

TEST_CASE("simulate rejects non-permutations") {
    auto notation = chain_notation(4);
    CHECK_THROWS_AS(ustats::simulate_elimination_width(notation, {0, 1, 2}), Error);
    CHECK_THROWS_AS(ustats::simulate_elimination_width(notation, {0, 1, 2, 2}), Error);
    CHECK_THROWS_AS(ustats::simulate_elimination_width(notation, {0, 1, 2, 4}), Error);
}

TEST_CASE("peak entries scale as extent to the width plus one") {
    auto triangle = ustats::validate_notation({{0, 1}, {1, 2}, {2, 0}}, {});
    auto chosen = ustats::optimize_order(triangle, 7, OrderStrategy::Exhaustive);
    CHECK(chosen.predicted_width == 2);
    CHECK(chosen.predicted_peak_entries == 343);
}
