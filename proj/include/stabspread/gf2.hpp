#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <vector>

namespace stabspread::gf2 {

// Dynamic bit vector over GF(2), packed into 64-bit words.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec zeros(std::size_t n) { return BitVec(n); }
    static BitVec from_indices(std::size_t n, const std::vector<std::size_t>& idx);

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true) {
        std::uint64_t m = std::uint64_t(1) << (i & 63);
        if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    BitVec& operator&=(const BitVec& o);
    BitVec& operator|=(const BitVec& o);
    friend BitVec operator^(BitVec a, const BitVec& b) { a ^= b; return a; }
    friend BitVec operator&(BitVec a, const BitVec& b) { a &= b; return a; }
    friend BitVec operator|(BitVec a, const BitVec& b) { a |= b; return a; }

    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }
    bool intersects(const BitVec& o) const;
    std::size_t count_and(const BitVec& o) const;   // |this AND o|
    bool parity_and(const BitVec& o) const;         // parity of |this AND o|

    bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
    bool operator!=(const BitVec& o) const { return !(*this == o); }

    // Compares supports as ascending index sequences (prefix < longer).
    int compare_support(const BitVec& o) const;

    std::vector<std::size_t> ones() const;
    static constexpr std::size_t npos = std::size_t(-1);
    std::size_t lowest_set() const;

    std::size_t hash() const;

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Row-oriented GF(2) matrix utilities.
struct Matrix {
    std::size_t cols = 0;
    std::vector<BitVec> rows;

    Matrix() = default;
    explicit Matrix(std::size_t c) : cols(c) {}

    void add_row(const BitVec& r);
    std::size_t rank() const;

    // In-place reduced row echelon form, trying pivot columns in the given
    // order (defaults to 0..cols-1). Zero rows are removed. Returns the pivot
    // column of each remaining row.
    std::vector<std::size_t> rref(const std::vector<std::size_t>& col_order = {});
};

// Incrementally maintained independent row set, kept reduced. Supports
// membership tests against the current span, and optionally tracks the
// combination of inserted generators that produced each basis row so that
// memberships can be expressed in terms of the original generators.
class RowBasis {
public:
    RowBasis() = default;
    explicit RowBasis(std::size_t cols, bool track_combos = false)
        : cols_(cols), track_(track_combos) {}

    // Returns true if v was independent of the current span (and was added).
    bool add(const BitVec& v);

    std::size_t size() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    BitVec reduce(BitVec v) const;
    bool contains(const BitVec& v) const { return reduce(v).none(); }

    // If v is in the span, returns the combination over *inserted* generators
    // (length = number of add() calls so far, including dependent ones).
    // Requires track_combos = true.
    std::optional<BitVec> combination_for(const BitVec& v) const;

    const std::vector<BitVec>& rows() const { return rows_; }

private:
    std::size_t cols_ = 0;
    bool track_ = false;
    std::size_t n_inserted_ = 0;
    std::vector<BitVec> rows_;    // reduced, each with distinct pivot
    std::vector<std::size_t> pivots_;
    std::vector<BitVec> combos_;  // parallel to rows_, over inserted indices
};

// Basis of the null space {x : M x^T = 0} (x as row vectors of length cols).
std::vector<BitVec> nullspace(const Matrix& m);

} // namespace stabspread::gf2
