#include <vector>

#include "doctest.h"
#include "ustats/errors.hpp"
#include "ustats/tensor.hpp"

using ustats::Config;
using ustats::DenseTensor;
using ustats::Error;
using ustats::ErrorCode;

TEST_CASE("row-major offsets: last axis fastest") {
    DenseTensor t(3, 4);
    CHECK(t.entry_count() == 64);
    std::vector<int> idx{2, 1, 3};
    CHECK(t.offset_of(idx) == 2 * 16 + 1 * 4 + 3);
    t.at(idx) = 7.5;
    CHECK(t.data[39] == 7.5);
}

TEST_CASE("order zero is a scalar with one entry") {
    DenseTensor t(0, 5);
    CHECK(t.entry_count() == 1);
    t.data[0] = 3.0;
    CHECK(t.scalar() == 3.0);
}

TEST_CASE("tensor_from_function fills every cell") {
    auto t = ustats::tensor_from_function(
        2, 3, [](std::span<const int> a) { return 10.0 * a[0] + a[1]; });
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::vector<int> idx{i, j};
            CHECK(t.at(idx) == 10.0 * i + j);
        }
}

TEST_CASE("next_multi_index walks the whole cube in lexicographic order") {
    std::vector<int> idx{0, 0, 0};
    int count = 1;
    std::vector<int> prev = idx;
    while (ustats::next_multi_index(idx, 3)) {
        ++count;
        CHECK(prev < idx);  // strictly increasing lexicographically
        prev = idx;
    }
    CHECK(count == 27);
    CHECK(idx == std::vector<int>{0, 0, 0});  // wrapped back
}

TEST_CASE("sparsify zeroes exactly the repeated-coordinate entries") {
    auto t = ustats::tensor_from_function(3, 3, [](std::span<const int>) { return 1.0; });
    auto s = ustats::sparsify(t);
    int nonzero = 0;
    std::vector<int> idx{0, 0, 0};
    do {
        bool repeated = idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2];
        CHECK(s.at(idx) == (repeated ? 0.0 : 1.0));
        if (s.at(idx) != 0.0) ++nonzero;
    } while (ustats::next_multi_index(idx, 3));
    CHECK(nonzero == 6);  // 3!
}

TEST_CASE("sparsify on order 2 zeroes the diagonal only") {
    auto t = ustats::tensor_from_function(
        2, 4, [](std::span<const int> a) { return 1.0 + a[0] + 10.0 * a[1]; });
    auto s = ustats::sparsify(t);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            std::vector<int> idx{i, j};
            CHECK(s.at(idx) == (i == j ? 0.0 : t.at(idx)));
        }
}

TEST_CASE("memory cap rejects the allocation before it happens") {
    Config tight;
    tight.memory_cap_entries = 100;
    CHECK_THROWS_WITH_AS(ustats::tensor_from_function(
                             3, 100, [](std::span<const int>) { return 0.0; }, tight),
                         doctest::Contains("cap"), Error);
    try {
        ustats::tensor_from_function(2, 11, [](std::span<const int>) { return 0.0; }, tight);
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MemoryCapExceeded);
    }
}

TEST_CASE("huge symbolic sizes do not overflow the cap check") {
    Config c;
    // 10^6^4 = 10^24 entries overflows 64 bits; the check must still fire.
    CHECK_THROWS_AS(ustats::checked_entry_count(4, 1000000, c), Error);
}

TEST_CASE("invalid shapes are rejected") {
    CHECK_THROWS_AS(DenseTensor(-1, 3), Error);
    CHECK_THROWS_AS(DenseTensor(2, 0), Error);
}
