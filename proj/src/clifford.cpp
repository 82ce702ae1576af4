#include "stabspread/clifford.hpp"

#include <sstream>

#include "stabspread/error.hpp"

namespace stabspread::clifford {

CliffordMap CliffordMap::identity(std::size_t n) {
    CliffordMap m;
    m.n_ = n;
    m.img_x_.reserve(n);
    m.img_z_.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
        m.img_x_.push_back(PauliOperator::single(n, q, 'X'));
        m.img_z_.push_back(PauliOperator::single(n, q, 'Z'));
    }
    return m;
}

namespace {

PauliOperator signed_single(std::size_t n, std::size_t q, char letter, bool minus) {
    PauliOperator p = PauliOperator::single(n, q, letter);
    if (minus) p.multiply_phase(2);
    return p;
}

} // namespace

CliffordMap CliffordMap::hadamard(std::size_t n, std::size_t q) {
    CliffordMap m = identity(n);
    m.img_x_[q] = PauliOperator::single(n, q, 'Z');
    m.img_z_[q] = PauliOperator::single(n, q, 'X');
    return m;
}

CliffordMap CliffordMap::phase_s(std::size_t n, std::size_t q) {
    CliffordMap m = identity(n);
    m.img_x_[q] = PauliOperator::single(n, q, 'Y');
    return m;
}

CliffordMap CliffordMap::phase_sdg(std::size_t n, std::size_t q) {
    CliffordMap m = identity(n);
    m.img_x_[q] = signed_single(n, q, 'Y', true);
    return m;
}

CliffordMap CliffordMap::pauli_x(std::size_t n, std::size_t q) {
    CliffordMap m = identity(n);
    m.img_z_[q] = signed_single(n, q, 'Z', true);
    return m;
}

CliffordMap CliffordMap::pauli_y(std::size_t n, std::size_t q) {
    CliffordMap m = identity(n);
    m.img_x_[q] = signed_single(n, q, 'X', true);
    m.img_z_[q] = signed_single(n, q, 'Z', true);
    return m;
}

CliffordMap CliffordMap::pauli_z(std::size_t n, std::size_t q) {
    CliffordMap m = identity(n);
    m.img_x_[q] = signed_single(n, q, 'X', true);
    return m;
}

CliffordMap CliffordMap::cnot(std::size_t n, std::size_t c, std::size_t t) {
    if (c == t) throw PreconditionError("cnot: control equals target");
    CliffordMap m = identity(n);
    m.img_x_[c] = PauliOperator::single(n, c, 'X') * PauliOperator::single(n, t, 'X');
    m.img_z_[t] = PauliOperator::single(n, c, 'Z') * PauliOperator::single(n, t, 'Z');
    return m;
}

CliffordMap CliffordMap::cz(std::size_t n, std::size_t a, std::size_t b) {
    if (a == b) throw PreconditionError("cz: duplicate qubit");
    CliffordMap m = identity(n);
    m.img_x_[a] = PauliOperator::single(n, a, 'X') * PauliOperator::single(n, b, 'Z');
    m.img_x_[b] = PauliOperator::single(n, a, 'Z') * PauliOperator::single(n, b, 'X');
    return m;
}

CliffordMap CliffordMap::swap(std::size_t n, std::size_t a, std::size_t b) {
    if (a == b) throw PreconditionError("swap: duplicate qubit");
    CliffordMap m = identity(n);
    m.img_x_[a] = PauliOperator::single(n, b, 'X');
    m.img_x_[b] = PauliOperator::single(n, a, 'X');
    m.img_z_[a] = PauliOperator::single(n, b, 'Z');
    m.img_z_[b] = PauliOperator::single(n, a, 'Z');
    return m;
}

CliffordMap CliffordMap::from_images(std::vector<PauliOperator> image_x,
                                     std::vector<PauliOperator> image_z) {
    CliffordMap m;
    m.n_ = image_x.size();
    m.img_x_ = std::move(image_x);
    m.img_z_ = std::move(image_z);
    if (!m.is_valid()) throw PreconditionError("CliffordMap::from_images: invalid images");
    return m;
}

PauliOperator CliffordMap::conjugate(const PauliOperator& p) const {
    if (p.num_qubits() != n_) throw PreconditionError("CliffordMap::conjugate: size mismatch");
    PauliOperator out(n_);
    out.set_phase(p.phase());
    for (std::size_t q : p.x_bits().ones()) out = out * img_x_[q];
    for (std::size_t q : p.z_bits().ones()) out = out * img_z_[q];
    return out;
}

CliffordMap CliffordMap::compose_after(const CliffordMap& first) const {
    if (first.n_ != n_) throw PreconditionError("CliffordMap::compose_after: size mismatch");
    CliffordMap m;
    m.n_ = n_;
    m.img_x_.reserve(n_);
    m.img_z_.reserve(n_);
    for (std::size_t q = 0; q < n_; ++q) {
        m.img_x_.push_back(conjugate(first.img_x_[q]));
        m.img_z_.push_back(conjugate(first.img_z_[q]));
    }
    return m;
}

CliffordMap CliffordMap::inverse() const {
    // Bits: the symplectic matrix M with rows [x|z] of the 2n images satisfies
    // M^{-1} = L M^T L with L exchanging the x and z halves.
    std::size_t n2 = 2 * n_;
    std::vector<gf2::BitVec> rows;
    rows.reserve(n2);
    for (std::size_t i = 0; i < n_; ++i) rows.push_back(pauli::symplectic_row(img_x_[i]));
    for (std::size_t i = 0; i < n_; ++i) rows.push_back(pauli::symplectic_row(img_z_[i]));
    auto swapped = [&](std::size_t i) { return (i + n_) % n2; };

    CliffordMap m;
    m.n_ = n_;
    m.img_x_.resize(n_);
    m.img_z_.resize(n_);
    for (std::size_t i = 0; i < n2; ++i) {
        gf2::BitVec row(n2);
        for (std::size_t j = 0; j < n2; ++j) {
            if (rows[swapped(j)].get(swapped(i))) row.set(j);
        }
        PauliOperator q = pauli::from_symplectic_row(row, 0);
        // Fix the phase so that conjugating q forward gives exactly X_i / Z_i.
        PauliOperator r = conjugate(q);
        q.multiply_phase((4 - r.phase()) & 3);
        if (i < n_) m.img_x_[i] = q; else m.img_z_[i - n_] = q;
    }
    return m;
}

CliffordMap CliffordMap::tensor(const CliffordMap& other) const {
    std::size_t n = n_ + other.n_;
    CliffordMap m;
    m.n_ = n;
    m.img_x_.reserve(n);
    m.img_z_.reserve(n);
    for (std::size_t q = 0; q < n_; ++q) m.img_x_.push_back(img_x_[q].embed(n, 0));
    for (std::size_t q = 0; q < other.n_; ++q) m.img_x_.push_back(other.img_x_[q].embed(n, n_));
    for (std::size_t q = 0; q < n_; ++q) m.img_z_.push_back(img_z_[q].embed(n, 0));
    for (std::size_t q = 0; q < other.n_; ++q) m.img_z_.push_back(other.img_z_[q].embed(n, n_));
    return m;
}

bool CliffordMap::is_valid() const {
    if (img_x_.size() != n_ || img_z_.size() != n_) return false;
    for (std::size_t i = 0; i < n_; ++i) {
        if (img_x_[i].num_qubits() != n_ || img_z_[i].num_qubits() != n_) return false;
        if (!img_x_[i].is_hermitian() || !img_z_[i].is_hermitian()) return false;
        if (img_x_[i].commutes_with(img_z_[i])) return false;
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            if (!img_x_[i].commutes_with(img_x_[j])) return false;
            if (!img_z_[i].commutes_with(img_z_[j])) return false;
            if (!img_x_[i].commutes_with(img_z_[j])) return false;
            if (!img_z_[i].commutes_with(img_x_[j])) return false;
        }
    }
    // Invertibility of the bit action.
    gf2::Matrix m(2 * n_);
    for (std::size_t i = 0; i < n_; ++i) m.add_row(pauli::symplectic_row(img_x_[i]));
    for (std::size_t i = 0; i < n_; ++i) m.add_row(pauli::symplectic_row(img_z_[i]));
    return m.rank() == 2 * n_;
}

bool CliffordMap::operator==(const CliffordMap& o) const {
    return n_ == o.n_ && img_x_ == o.img_x_ && img_z_ == o.img_z_;
}

std::string CliffordMap::to_string() const {
    std::ostringstream os;
    for (std::size_t q = 0; q < n_; ++q) {
        os << 'X' << (q + 1) << " -> " << img_x_[q].to_string() << '\n';
        os << 'Z' << (q + 1) << " -> " << img_z_[q].to_string() << '\n';
    }
    return os.str();
}

} // namespace stabspread::clifford
