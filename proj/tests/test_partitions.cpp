#include <algorithm>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "ustats/complexity.hpp"
#include "ustats/errors.hpp"
#include "ustats/notation.hpp"
#include "ustats/partition.hpp"

using ustats::bell_number;
using ustats::Error;
using ustats::IndexTuple;
using ustats::PartitionStream;
using ustats::SetPartition;
using ustats::SparsifiedPartitionStream;

namespace {

std::vector<SetPartition> all_partitions(int m) {
    std::vector<SetPartition> out;
    PartitionStream stream(m);
    SetPartition p;
    while (stream.next(p)) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("stream counts match the Bell numbers") {
    const std::uint64_t bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140};
    for (int m = 1; m <= 8; ++m) {
        CHECK(all_partitions(m).size() == bell[m]);
        CHECK(bell_number(m) == bell[m]);
    }
    CHECK(bell_number(14) == 190899322);
}

TEST_CASE("stream order: coarsest first, finest last, strictly increasing") {
    auto parts = all_partitions(4);
    CHECK(parts.front() == SetPartition::coarsest(4));
    CHECK(parts.back() == SetPartition::finest(4));
    for (std::size_t i = 1; i < parts.size(); ++i)
        CHECK(parts[i - 1].rgs() < parts[i].rgs());
}

TEST_CASE("next_chunk covers the same sequence as next") {
    PartitionStream chunked(5);
    std::vector<SetPartition> via_chunks, chunk;
    while (chunked.next_chunk(chunk, 7) > 0)
        via_chunks.insert(via_chunks.end(), chunk.begin(), chunk.end());
    auto sequential = all_partitions(5);
    REQUIRE(via_chunks.size() == sequential.size());
    for (std::size_t i = 0; i < sequential.size(); ++i)
        CHECK(via_chunks[i] == sequential[i]);
}

TEST_CASE("from_blocks round trips and validates") {
    auto p = SetPartition::from_blocks(5, {{2, 0}, {1, 4}, {3}});
    CHECK(p.block_count() == 3);
    CHECK(p.block_of(0) == p.block_of(2));
    CHECK(p.block_of(1) == p.block_of(4));
    CHECK(p.blocks() == std::vector<std::vector<int>>{{0, 2}, {1, 4}, {3}});
    CHECK_THROWS_AS(SetPartition::from_blocks(3, {{0, 1}}), Error);            // misses 2
    CHECK_THROWS_AS(SetPartition::from_blocks(3, {{0, 1}, {1, 2}}), Error);    // overlap
    CHECK_THROWS_AS(SetPartition(std::vector<int>{0, 2}), Error);              // label gap
    CHECK_THROWS_AS(SetPartition(std::vector<int>{1, 0}), Error);              // first not 0
}

TEST_CASE("lattice weights on small hand cases") {
    // Single block of size m: (-1)^(m-1) * (m-1)!
    CHECK(ustats::mobius_coefficient(SetPartition::coarsest(4)) == -6);
    CHECK(ustats::mobius_coefficient(SetPartition::coarsest(5)) == 24);
    CHECK(ustats::mobius_coefficient(SetPartition::finest(6)) == 1);
    CHECK(ustats::mobius_coefficient(SetPartition::from_blocks(4, {{0, 1}, {2, 3}})) == 1);
    CHECK(ustats::mobius_coefficient(SetPartition::from_blocks(3, {{0, 2}, {1}})) == -1);
}

TEST_CASE("pair weight generalizes the bottom weight") {
    for (int m = 2; m <= 6; ++m)
        for (const auto& p : all_partitions(m))
            CHECK(ustats::mobius_pair(SetPartition::finest(m), p) ==
                  ustats::mobius_coefficient(p));
}

TEST_CASE("refinement order basics") {
    auto fine = SetPartition::from_blocks(4, {{0}, {1}, {2, 3}});
    auto coarse = SetPartition::from_blocks(4, {{0, 1}, {2, 3}});
    CHECK(ustats::is_refinement(fine, coarse));
    CHECK_FALSE(ustats::is_refinement(coarse, fine));
    CHECK(ustats::is_refinement(fine, fine));
    CHECK_THROWS_AS(ustats::is_refinement(fine, SetPartition::finest(3)), Error);
    CHECK_THROWS_AS(ustats::mobius_pair(coarse, fine), Error);  // not a refinement
}

TEST_CASE("Mobius pair inverts the zeta function on the m=4 lattice") {
    // sum over sigma in [pi, rho] of mu(sigma, rho) is 1 iff pi == rho else 0.
    auto parts = all_partitions(4);
    for (const auto& pi : parts)
        for (const auto& rho : parts) {
            if (!ustats::is_refinement(pi, rho)) continue;
            std::int64_t total = 0;
            for (const auto& sigma : parts)
                if (ustats::is_refinement(pi, sigma) && ustats::is_refinement(sigma, rho))
                    total += ustats::mobius_pair(sigma, rho);
            CHECK(total == (pi == rho ? 1 : 0));
        }
}

TEST_CASE("sparsification keeps exactly the partitions with no co-occurring pair merged") {
    std::vector<IndexTuple> chain3{{0, 1}, {1, 2}};
    CHECK(ustats::passes_sparsification(SetPartition::from_blocks(3, {{0, 2}, {1}}), chain3));
    CHECK_FALSE(ustats::passes_sparsification(SetPartition::from_blocks(3, {{0, 1}, {2}}), chain3));
    CHECK_FALSE(ustats::passes_sparsification(SetPartition::coarsest(3), chain3));
    CHECK(ustats::passes_sparsification(SetPartition::finest(3), chain3));
}

TEST_CASE("chain survivors drop one Bell level") {
    for (int m = 2; m <= 9; ++m) {
        std::vector<IndexTuple> sig;
        for (int i = 0; i + 1 < m; ++i) sig.push_back({i, i + 1});
        SparsifiedPartitionStream stream(m, sig);
        SetPartition p;
        std::uint64_t survivors = 0;
        while (stream.next(p)) {
            ++survivors;
            CHECK(ustats::passes_sparsification(p, sig));
        }
        CHECK(survivors == bell_number(m - 1));
        CHECK(stream.enumerated() == bell_number(m));
    }
}

TEST_CASE("survivors of any signature have duplicate-free induced tuples") {
    std::vector<IndexTuple> sig{{0, 1}, {1, 2, 3}, {0, 3}};
    SparsifiedPartitionStream stream(4, sig);
    SetPartition p;
    while (stream.next(p)) {
        for (const IndexTuple& tuple : ustats::induced_signature(sig, p)) {
            IndexTuple sorted = tuple;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        }
    }
}

TEST_CASE("induced signature relabels by block") {
    std::vector<IndexTuple> chain4{{0, 1}, {1, 2}, {2, 3}};
    auto p = SetPartition::from_blocks(4, {{0, 2}, {1}, {3}});
    auto induced = ustats::induced_signature(chain4, p);
    CHECK(induced == std::vector<IndexTuple>{{0, 1}, {1, 0}, {0, 2}});
}

TEST_CASE("stream bounds are enforced") {
    CHECK_THROWS_AS(PartitionStream(0), Error);
    CHECK_THROWS_AS(PartitionStream(15), Error);
    CHECK_THROWS_AS(bell_number(-1), Error);
    CHECK_THROWS_AS(bell_number(16), Error);
}
