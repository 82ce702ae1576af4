#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stabspread/gf2.hpp"

namespace stabspread::pauli {

using gf2::BitVec;

// An n-qubit Pauli operator in the phase-tracked canonical form
//     P = i^phase * X^x * Z^z
// with phase mod 4 and x, z bit vectors over the qubits. The single-qubit
// letters are I = (0,0), X = (1,0), Z = (0,1), Y = i*X*Z = (1,1) carrying one
// factor of i in `phase`. Hermitian operators have an even phase after
// accounting for the i per Y (see is_hermitian()).
class PauliOperator {
public:
    PauliOperator() = default;
    explicit PauliOperator(std::size_t n) : n_(n), x_(n), z_(n), phase_(0) {}
    PauliOperator(std::size_t n, BitVec x, BitVec z, std::uint8_t phase);

    static PauliOperator identity(std::size_t n) { return PauliOperator(n); }
    // Single-letter operator at qubit q: letter in {'I','X','Y','Z'}.
    static PauliOperator single(std::size_t n, std::size_t q, char letter);

    // Parses either sparse text ("X1 Z3 Y4", 1-based qubit indices, optional
    // leading phase token among + - i -i +i) or a dense letter string
    // ("IXZYI..", qubit 1 first, same optional phase prefix). If n == 0 the
    // qubit count is inferred (dense: string length; sparse: largest index).
    static PauliOperator parse(const std::string& text, std::size_t n = 0);

    std::size_t num_qubits() const { return n_; }
    const BitVec& x_bits() const { return x_; }
    const BitVec& z_bits() const { return z_; }
    std::uint8_t phase() const { return phase_; }
    void set_phase(std::uint8_t p) { phase_ = p & 3; }
    void multiply_phase(std::uint8_t p) { phase_ = (phase_ + p) & 3; }

    char letter_at(std::size_t q) const;
    // Overwrites the letter at q, keeping the canonical i-per-Y convention.
    void set_letter(std::size_t q, char letter);

    BitVec support() const { return x_ | z_; }
    std::size_t weight() const { return support().count(); }
    bool is_identity_up_to_phase() const { return !x_.any() && !z_.any(); }
    bool is_identity() const { return is_identity_up_to_phase() && phase_ == 0; }

    // Phase-exact product: (*this) * rhs in the canonical form above.
    PauliOperator operator*(const PauliOperator& rhs) const;
    PauliOperator inverse() const;   // P^{-1} = P^dagger for Hermitian P
    PauliOperator adjoint() const;

    bool commutes_with(const PauliOperator& o) const;
    bool is_hermitian() const;       // P^2 = +I

    bool operator==(const PauliOperator& o) const {
        return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
    }
    bool operator!=(const PauliOperator& o) const { return !(*this == o); }
    bool equals_up_to_phase(const PauliOperator& o) const {
        return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
    }

    // "-i X1 Y3" style sparse rendering (identity -> "+ I").
    std::string to_string() const;
    // "IXZY..." dense rendering with the same phase prefix convention.
    std::string to_dense_string() const;

    // Places this operator on qubits [offset, offset + n) of a larger register.
    PauliOperator embed(std::size_t big_n, std::size_t offset) const;

    // Displayed phase prefix after attributing one i to each Y letter:
    // one of "+", "i", "-", "-i".
    std::string phase_prefix() const;

    std::size_t hash() const;

private:
    std::size_t n_ = 0;
    BitVec x_, z_;
    std::uint8_t phase_ = 0;
};

// Ordering used to pick canonical witnesses: weight, then support as an
// ascending index sequence, then dense letter string, then displayed phase.
bool witness_less(const PauliOperator& a, const PauliOperator& b);

// Bit-vector bridge for group linear algebra: [x | z] of length 2n.
BitVec symplectic_row(const PauliOperator& p);
PauliOperator from_symplectic_row(const BitVec& row, std::uint8_t phase = 0);

} // namespace stabspread::pauli
