#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "stabspread/error.hpp"
#include "stabspread/gf2.hpp"

using namespace stabspread;
using gf2::BitVec;
using gf2::Matrix;
using gf2::RowBasis;

namespace {

BitVec random_vec(std::size_t n, std::mt19937& rng) {
    BitVec v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (rng() & 1) v.set(i);
    return v;
}

// Oracle: rank r <=> the span contains exactly 2^r distinct vectors.
std::size_t span_size(const std::vector<BitVec>& rows, std::size_t n) {
    std::set<std::vector<std::uint64_t>> seen;
    std::size_t m = rows.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        BitVec acc(n);
        for (std::size_t i = 0; i < m; ++i)
            if ((mask >> i) & 1) acc ^= rows[i];
        seen.insert(acc.words());
    }
    return seen.size();
}

} // namespace

TEST_CASE("BitVec basics") {
    BitVec v(130);
    CHECK(v.size() == 130);
    CHECK(v.none());
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.count() == 3);
    CHECK(v.get(64));
    CHECK_FALSE(v.get(63));
    v.flip(64);
    CHECK_FALSE(v.get(64));
    CHECK(v.ones() == std::vector<std::size_t>{0, 129});
    CHECK(v.lowest_set() == 0);
    v.set(0, false);
    CHECK(v.lowest_set() == 129);
    CHECK(BitVec(8).lowest_set() == BitVec::npos);
}

TEST_CASE("BitVec bitwise ops and parity") {
    std::mt19937 rng(7);
    for (int it = 0; it < 50; ++it) {
        BitVec a = random_vec(100, rng), b = random_vec(100, rng);
        BitVec x = a ^ b, n = a & b, o = a | b;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < 100; ++i) {
            CHECK(x.get(i) == (a.get(i) != b.get(i)));
            CHECK(n.get(i) == (a.get(i) && b.get(i)));
            CHECK(o.get(i) == (a.get(i) || b.get(i)));
            if (a.get(i) && b.get(i)) ++cnt;
        }
        CHECK(a.count_and(b) == cnt);
        CHECK(a.parity_and(b) == (cnt % 2 == 1));
        CHECK(a.intersects(b) == (cnt > 0));
    }
}

TEST_CASE("BitVec support comparison is sequence order") {
    auto v = [](std::vector<std::size_t> idx) { return BitVec::from_indices(10, idx); };
    CHECK(v({1, 2}).compare_support(v({1, 3})) < 0);
    CHECK(v({1, 3}).compare_support(v({1, 2})) > 0);
    CHECK(v({3}).compare_support(v({1, 2})) > 0);    // 3 > 1
    CHECK(v({1}).compare_support(v({1, 2})) < 0);    // prefix is smaller
    CHECK(v({0, 5}).compare_support(v({0, 5})) == 0);
}

TEST_CASE("BitVec from_indices bounds") {
    CHECK_THROWS_AS(BitVec::from_indices(4, {4}), PreconditionError);
    CHECK_THROWS_AS(BitVec(4) ^ BitVec(5), PreconditionError);
}

TEST_CASE("Matrix rank matches span-counting oracle") {
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        std::size_t rows = 1 + rng() % 9, cols = 1 + rng() % 12;
        Matrix m(cols);
        std::vector<BitVec> raw;
        for (std::size_t r = 0; r < rows; ++r) {
            BitVec v = random_vec(cols, rng);
            m.add_row(v);
            raw.push_back(v);
        }
        std::size_t r = m.rank();
        CHECK((std::size_t(1) << r) == span_size(raw, cols));
    }
}

TEST_CASE("rref preserves rowspace and produces unit pivot columns") {
    std::mt19937 rng(13);
    for (int it = 0; it < 30; ++it) {
        std::size_t rows = 1 + rng() % 8, cols = 2 + rng() % 10;
        Matrix m(cols);
        std::vector<BitVec> raw;
        for (std::size_t r = 0; r < rows; ++r) {
            BitVec v = random_vec(cols, rng);
            m.add_row(v);
            raw.push_back(v);
        }
        Matrix red = m;
        auto pivots = red.rref();
        CHECK(pivots.size() == red.rows.size());
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            for (std::size_t r = 0; r < red.rows.size(); ++r)
                CHECK(red.rows[r].get(pivots[i]) == (r == i));
        }
        RowBasis original(cols), reduced(cols);
        for (const auto& v : raw) original.add(v);
        for (const auto& v : red.rows) reduced.add(v);
        for (const auto& v : raw) CHECK(reduced.contains(v));
        for (const auto& v : red.rows) CHECK(original.contains(v));
    }
}

TEST_CASE("rref honours preferred column order") {
    Matrix m(4);
    m.add_row(BitVec::from_indices(4, {0, 2}));
    m.add_row(BitVec::from_indices(4, {0, 1, 2, 3}));
    auto pivots = m.rref({2, 3, 0, 1});
    REQUIRE(pivots.size() == 2);
    CHECK(pivots[0] == 2);
    CHECK(pivots[1] == 3);
}

TEST_CASE("nullspace vectors annihilate all rows") {
    std::mt19937 rng(17);
    for (int it = 0; it < 30; ++it) {
        std::size_t rows = 1 + rng() % 8, cols = 2 + rng() % 12;
        Matrix m(cols);
        for (std::size_t r = 0; r < rows; ++r) m.add_row(random_vec(cols, rng));
        auto ns = gf2::nullspace(m);
        CHECK(ns.size() == cols - m.rank());
        RowBasis indep(cols);
        for (const auto& v : ns) {
            for (const auto& row : m.rows) CHECK_FALSE(row.parity_and(v));
            CHECK(indep.add(v));
        }
    }
}

TEST_CASE("RowBasis membership and combinations") {
    std::mt19937 rng(23);
    for (int it = 0; it < 30; ++it) {
        std::size_t cols = 4 + rng() % 10;
        RowBasis basis(cols, true);
        std::vector<BitVec> gens;
        for (int g = 0; g < 8; ++g) {
            BitVec v = random_vec(cols, rng);
            gens.push_back(v);
            basis.add(v);
        }
        // members reconstruct from the reported generator combination
        for (int probe = 0; probe < 10; ++probe) {
            BitVec target(cols);
            for (const auto& g : gens)
                if (rng() & 1) target ^= g;
            CHECK(basis.contains(target));
            auto combo = basis.combination_for(target);
            REQUIRE(combo.has_value());
            BitVec rebuilt(cols);
            for (std::size_t i : combo->ones()) rebuilt ^= gens[i];
            CHECK(rebuilt == target);
        }
    }
    // a vector outside the span is rejected
    RowBasis b(3, true);
    b.add(BitVec::from_indices(3, {0}));
    CHECK_FALSE(b.combination_for(BitVec::from_indices(3, {1})).has_value());
    CHECK_FALSE(b.contains(BitVec::from_indices(3, {1})));
}
