#include "stabspread/gf2.hpp"

#include <algorithm>
#include <bit>

#include "stabspread/error.hpp"

namespace stabspread::gf2 {

BitVec BitVec::from_indices(std::size_t n, const std::vector<std::size_t>& idx) {
    BitVec v(n);
    for (std::size_t i : idx) {
        if (i >= n) throw PreconditionError("BitVec::from_indices: index out of range");
        v.set(i);
    }
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw PreconditionError("BitVec xor: size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

BitVec& BitVec::operator&=(const BitVec& o) {
    if (n_ != o.n_) throw PreconditionError("BitVec and: size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
}

BitVec& BitVec::operator|=(const BitVec& o) {
    if (n_ != o.n_) throw PreconditionError("BitVec or: size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
}

std::size_t BitVec::count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::any() const {
    for (auto w : w_) if (w) return true;
    return false;
}

bool BitVec::intersects(const BitVec& o) const {
    std::size_t m = std::min(w_.size(), o.w_.size());
    for (std::size_t i = 0; i < m; ++i) if (w_[i] & o.w_[i]) return true;
    return false;
}

std::size_t BitVec::count_and(const BitVec& o) const {
    std::size_t m = std::min(w_.size(), o.w_.size());
    std::size_t c = 0;
    for (std::size_t i = 0; i < m; ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
}

bool BitVec::parity_and(const BitVec& o) const {
    std::size_t m = std::min(w_.size(), o.w_.size());
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < m; ++i) acc ^= (w_[i] & o.w_[i]);
    return std::popcount(acc) & 1;
}

int BitVec::compare_support(const BitVec& o) const {
    auto a = ones();
    auto b = o.ones();
    std::size_t m = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    return 0;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        std::uint64_t w = w_[wi];
        while (w) {
            out.push_back(wi * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return out;
}

std::size_t BitVec::lowest_set() const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
        if (w_[wi]) return wi * 64 + std::countr_zero(w_[wi]);
    }
    return npos;
}

std::size_t BitVec::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : w_) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return h ^ n_;
}

void Matrix::add_row(const BitVec& r) {
    if (r.size() != cols) throw PreconditionError("Matrix::add_row: width mismatch");
    rows.push_back(r);
}

std::size_t Matrix::rank() const {
    Matrix m = *this;
    return m.rref().size();
}

std::vector<std::size_t> Matrix::rref(const std::vector<std::size_t>& col_order) {
    std::vector<std::size_t> order = col_order;
    if (order.empty()) {
        order.resize(cols);
        for (std::size_t c = 0; c < cols; ++c) order[c] = c;
    }
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t c : order) {
        std::size_t sel = BitVec::npos;
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (rows[r].get(c)) { sel = r; break; }
        }
        if (sel == BitVec::npos) continue;
        std::swap(rows[next], rows[sel]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next && rows[r].get(c)) rows[r] ^= rows[next];
        }
        pivots.push_back(c);
        ++next;
        if (next == rows.size()) break;
    }
    rows.resize(next);
    return pivots;
}

bool RowBasis::add(const BitVec& v) {
    if (v.size() != cols_) throw PreconditionError("RowBasis::add: width mismatch");
    BitVec r = v;
    BitVec combo = track_ ? BitVec(n_inserted_ + 1) : BitVec();
    if (track_) {
        combo.set(n_inserted_);
        // extend existing combos to the new length
        for (auto& c : combos_) {
            BitVec e(n_inserted_ + 1);
            for (std::size_t i : c.ones()) e.set(i);
            c = e;
        }
    }
    ++n_inserted_;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (r.get(pivots_[i])) {
            r ^= rows_[i];
            if (track_) combo ^= combos_[i];
        }
    }
    std::size_t p = r.lowest_set();
    if (p == BitVec::npos) return false;
    // back-substitute to keep rows reduced
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].get(p)) {
            rows_[i] ^= r;
            if (track_) combos_[i] ^= combo;
        }
    }
    rows_.push_back(r);
    pivots_.push_back(p);
    if (track_) combos_.push_back(combo);
    return true;
}

BitVec RowBasis::reduce(BitVec v) const {
    if (v.size() != cols_) throw PreconditionError("RowBasis::reduce: width mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (v.get(pivots_[i])) v ^= rows_[i];
    }
    return v;
}

std::optional<BitVec> RowBasis::combination_for(const BitVec& v) const {
    if (!track_) throw PreconditionError("RowBasis: combination tracking disabled");
    BitVec r = v;
    BitVec combo(n_inserted_);
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (r.get(pivots_[i])) {
            r ^= rows_[i];
            BitVec c(n_inserted_);
            for (std::size_t j : combos_[i].ones()) c.set(j);
            combo ^= c;
        }
    }
    if (r.any()) return std::nullopt;
    return combo;
}

std::vector<BitVec> nullspace(const Matrix& m) {
    Matrix r = m;
    std::vector<std::size_t> pivots = r.rref();
    std::vector<bool> is_pivot(m.cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<BitVec> basis;
    for (std::size_t c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        BitVec v(m.cols);
        v.set(c);
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            if (r.rows[i].get(c)) v.set(pivots[i]);
        }
        basis.push_back(v);
    }
    return basis;
}

} // namespace stabspread::gf2
