#pragma once

// Brute-force dense-matrix oracles for the unit tests. Everything here is an
// independent implementation path: Paulis and gates act on explicit 2^n
// amplitude matrices, so algebraic identities in the library can be checked
// against plain numerics.

#include <bit>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "stabspread/circuit.hpp"
#include "stabspread/pauli.hpp"

namespace testutil {

using cplx = std::complex<double>;
using Mat = std::vector<std::vector<cplx>>;

inline Mat zero_mat(std::size_t d) { return Mat(d, std::vector<cplx>(d, 0.0)); }

inline Mat eye(std::size_t d) {
    Mat m = zero_mat(d);
    for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat matmul(const Mat& a, const Mat& b) {
    std::size_t d = a.size();
    Mat c = zero_mat(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            if (a[i][k] == cplx(0.0)) continue;
            for (std::size_t j = 0; j < d; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

inline Mat dagger(const Mat& a) {
    std::size_t d = a.size();
    Mat c = zero_mat(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) c[i][j] = std::conj(a[j][i]);
    return c;
}

inline bool approx_eq(const Mat& a, const Mat& b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (std::abs(a[i][j] - b[i][j]) > tol) return false;
    return true;
}

// Convention shared with the library's dense simulator: qubit q is bit q of
// the basis index (least significant first).
inline Mat pauli_matrix(const stabspread::pauli::PauliOperator& p) {
    std::size_t n = p.num_qubits();
    std::size_t d = std::size_t(1) << n;
    std::uint64_t xm = 0, zm = 0;
    for (std::size_t q : p.x_bits().ones()) xm |= std::uint64_t(1) << q;
    for (std::size_t q : p.z_bits().ones()) zm |= std::uint64_t(1) << q;
    static const cplx iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Mat m = zero_mat(d);
    // X^x Z^z |j> = (-1)^{j.z} |j ^ x>
    for (std::size_t j = 0; j < d; ++j) {
        cplx v = iphase[p.phase()];
        if (std::popcount(j & zm) & 1) v = -v;
        m[j ^ xm][j] = v;
    }
    return m;
}

// Single-qubit gate u (2x2) applied at qubit q of an n-qubit register.
inline Mat single_qubit_gate(std::size_t n, std::size_t q, const Mat& u) {
    std::size_t d = std::size_t(1) << n;
    Mat m = zero_mat(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::size_t bit = (j >> q) & 1;
        for (std::size_t out = 0; out < 2; ++out) {
            cplx v = u[out][bit];
            if (v == cplx(0.0)) continue;
            std::size_t i = (j & ~(std::size_t(1) << q)) | (out << q);
            m[i][j] += v;
        }
    }
    return m;
}

inline Mat h_mat(std::size_t n, std::size_t q) {
    double s = 1.0 / std::sqrt(2.0);
    return single_qubit_gate(n, q, {{s, s}, {s, -s}});
}
inline Mat s_mat(std::size_t n, std::size_t q) {
    return single_qubit_gate(n, q, {{1.0, 0.0}, {0.0, cplx(0, 1)}});
}
inline Mat sdg_mat(std::size_t n, std::size_t q) {
    return single_qubit_gate(n, q, {{1.0, 0.0}, {0.0, cplx(0, -1)}});
}
inline Mat t_mat(std::size_t n, std::size_t q) {
    return single_qubit_gate(n, q, {{1.0, 0.0}, {0.0, std::polar(1.0, std::acos(-1.0) / 4)}});
}

inline Mat cnot_mat(std::size_t n, std::size_t c, std::size_t t) {
    std::size_t d = std::size_t(1) << n;
    Mat m = zero_mat(d);
    for (std::size_t j = 0; j < d; ++j) {
        std::size_t i = j;
        if ((j >> c) & 1) i ^= std::size_t(1) << t;
        m[i][j] = 1.0;
    }
    return m;
}

inline Mat cz_mat(std::size_t n, std::size_t a, std::size_t b) {
    std::size_t d = std::size_t(1) << n;
    Mat m = zero_mat(d);
    for (std::size_t j = 0; j < d; ++j) {
        bool both = ((j >> a) & 1) && ((j >> b) & 1);
        m[j][j] = both ? -1.0 : 1.0;
    }
    return m;
}

inline Mat conj_by(const Mat& u, const Mat& p) { return matmul(matmul(u, p), dagger(u)); }

// Dense unitary of a measurement-free circuit, multiplied gate by gate.
inline Mat circuit_matrix(const stabspread::Circuit& c) {
    using stabspread::CliffordGate;
    using stabspread::TGate;
    using stabspread::pauli::PauliOperator;
    if (c.n > 10) throw std::runtime_error("circuit_matrix oracle: register too large");
    Mat u = eye(std::size_t(1) << c.n);
    for (const auto& op : c.ops) {
        Mat m;
        if (const auto* tg = std::get_if<TGate>(&op)) {
            m = t_mat(c.n, tg->target);
            if (tg->dagger) m = dagger(m);
        } else if (const auto* g = std::get_if<CliffordGate>(&op)) {
            if (g->name == "H")
                m = h_mat(c.n, g->targets[0]);
            else if (g->name == "S")
                m = s_mat(c.n, g->targets[0]);
            else if (g->name == "SDG")
                m = sdg_mat(c.n, g->targets[0]);
            else if (g->name == "X" || g->name == "Y" || g->name == "Z")
                m = pauli_matrix(PauliOperator::single(c.n, g->targets[0], g->name[0]));
            else if (g->name == "CNOT")
                m = cnot_mat(c.n, g->targets[0], g->targets[1]);
            else if (g->name == "CZ")
                m = cz_mat(c.n, g->targets[0], g->targets[1]);
            else if (g->name == "SWAP")
                m = matmul(cnot_mat(c.n, g->targets[0], g->targets[1]),
                           matmul(cnot_mat(c.n, g->targets[1], g->targets[0]),
                                  cnot_mat(c.n, g->targets[0], g->targets[1])));
            else
                throw std::runtime_error("circuit_matrix oracle: unknown gate " + g->name);
        } else {
            throw std::runtime_error("circuit_matrix oracle: only unitary ops supported");
        }
        u = matmul(m, u);
    }
    return u;
}

} // namespace testutil
