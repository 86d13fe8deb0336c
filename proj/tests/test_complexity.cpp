#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "ustats/complexity.hpp"
#include "ustats/errors.hpp"
#include "ustats/partition.hpp"

using ustats::chain_signature;
using ustats::complexity_report;
using ustats::Config;
using ustats::Error;
using ustats::IndexTuple;

TEST_CASE("chain reports: lattice sizes, width histogram, and peak width") {
    // Largest quotient width of the order-m chain, m = 2..8.
    const int expected_m[] = {1, 1, 2, 2, 2, 2, 3};
    for (int m = 2; m <= 8; ++m) {
        CAPTURE(m);
        auto report = complexity_report(chain_signature(m), 10);
        CHECK(report.index_count == m);
        CHECK(report.graph_vertices == m);
        CHECK(report.graph_edges == m - 1);
        CHECK(report.bell_count == ustats::bell_number(m));
        CHECK(report.sparsified_count == ustats::bell_number(m - 1));
        CHECK(report.max_quotient_width == expected_m[m - 2]);

        std::uint64_t histogram_total = 0;
        for (const auto& [width, count] : report.count_by_width) {
            CHECK(width >= 0);
            CHECK(width <= report.max_quotient_width);
            histogram_total += count;
        }
        CHECK(histogram_total == report.sparsified_count);

        REQUIRE(report.treewidth_exact.has_value());
        CHECK(*report.treewidth_exact == 1);  // chains decompose along a path
        CHECK(report.treewidth_lower <= *report.treewidth_exact);
        CHECK(*report.treewidth_exact <= report.treewidth_upper);
    }
}

TEST_CASE("hand-priced estimates") {
    // Order-3 chain at n=10: two survivors, both width 1, two tensors:
    // 2 * (2 * 10^2) = 400.
    CHECK(complexity_report(chain_signature(3), 10).flops_estimate == "400");

    // Order-4 chain at n=10: survivors 4 at width 1, 1 at width 2, three
    // tensors: 3 * (4*10^2 + 10^3) = 4200.
    auto report = complexity_report(chain_signature(4), 10);
    CHECK(report.count_by_width == std::map<int, std::uint64_t>{{1, 4}, {2, 1}});
    CHECK(report.flops_estimate == "4200");
}

TEST_CASE("estimates past 64 bits stay exact") {
    // Order-4 chain at n=10^7: 3 * (4*10^14 + 10^21) overflows any u64.
    auto report = complexity_report(chain_signature(4), 10'000'000);
    CHECK(report.flops_estimate == "3000001200000000000000");
    CHECK(report.extent == 10'000'000);
}

TEST_CASE("disconnected signatures have width-0 quotients") {
    // ((1),(2)): no co-occurrence, so even the merged partition survives.
    auto report = complexity_report({{1}, {2}}, 10);
    CHECK(report.bell_count == 2);
    CHECK(report.sparsified_count == 2);
    CHECK(report.max_quotient_width == 0);
    CHECK(report.count_by_width == std::map<int, std::uint64_t>{{0, 2}});
    REQUIRE(report.treewidth_exact.has_value());
    CHECK(*report.treewidth_exact == 0);
    CHECK(report.flops_estimate == "40");  // 2 tensors * 2 survivors * 10^1
}

TEST_CASE("signatures are canonicalized before pricing") {
    auto one_based = complexity_report(chain_signature(4), 7);
    auto zero_based = complexity_report({{0, 1}, {1, 2}, {2, 3}}, 7);
    CHECK(one_based.signature == zero_based.signature);
    CHECK(one_based.flops_estimate == zero_based.flops_estimate);
    CHECK(one_based.count_by_width == zero_based.count_by_width);
}

TEST_CASE("top-level exactness honors the configured bound; quotients stay exact") {
    Config tight;
    tight.exact_treewidth_bound = 4;
    auto report = complexity_report(chain_signature(6), 10, tight);
    CHECK_FALSE(report.treewidth_exact.has_value());
    CHECK(report.treewidth_lower >= 1);
    CHECK(report.treewidth_upper >= 1);
    // Histogram still filled exactly, bound lifted internally for quotients.
    std::uint64_t total = 0;
    for (const auto& [width, count] : report.count_by_width) total += count;
    CHECK(total == ustats::bell_number(5));
    CHECK(report.max_quotient_width == 2);
}

TEST_CASE("executed flops are absent unless a run filled them") {
    auto report = complexity_report(chain_signature(3), 10);
    CHECK_FALSE(report.executed_flops.has_value());
}

TEST_CASE("chain signature shape and bounds") {
    CHECK(chain_signature(2) == std::vector<IndexTuple>{{1, 2}});
    CHECK(chain_signature(4) == std::vector<IndexTuple>{{1, 2}, {2, 3}, {3, 4}});
    CHECK_THROWS_AS(chain_signature(1), Error);
    CHECK_THROWS_AS(complexity_report(chain_signature(3), 0), Error);
}
