#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stabspread/error.hpp"
#include "stabspread/pauli.hpp"
#include "test_util.hpp"

using namespace stabspread;
using pauli::PauliOperator;
using testutil::approx_eq;
using testutil::conj_by;
using testutil::matmul;
using testutil::pauli_matrix;

namespace {

// every 2-qubit operator: 16 bit patterns x 4 phases
std::vector<PauliOperator> all_two_qubit() {
    std::vector<PauliOperator> out;
    for (int xb = 0; xb < 4; ++xb)
        for (int zb = 0; zb < 4; ++zb)
            for (int ph = 0; ph < 4; ++ph) {
                gf2::BitVec x(2), z(2);
                if (xb & 1) x.set(0);
                if (xb & 2) x.set(1);
                if (zb & 1) z.set(0);
                if (zb & 2) z.set(1);
                out.emplace_back(2, x, z, std::uint8_t(ph));
            }
    return out;
}

} // namespace

TEST_CASE("parse and render round-trip") {
    auto p = PauliOperator::parse("X1 Z3", 4);
    CHECK(p.num_qubits() == 4);
    CHECK(p.letter_at(0) == 'X');
    CHECK(p.letter_at(2) == 'Z');
    CHECK(p.weight() == 2);
    CHECK(p.to_string() == "+ X1 Z3");

    auto q = PauliOperator::parse("-i Y2 X5");
    CHECK(q.num_qubits() == 5);
    CHECK(q.to_string() == "-i Y2 X5");
    CHECK(PauliOperator::parse(q.to_string(), 5) == q);

    auto d = PauliOperator::parse("IXZY");
    CHECK(d.num_qubits() == 4);
    CHECK(d.to_dense_string() == "IXZY");
    CHECK(d.letter_at(3) == 'Y');
    CHECK(PauliOperator::parse(d.to_string(), 4) == d);

    auto id = PauliOperator::parse("+ I", 3);
    CHECK(id.is_identity());
    CHECK(id.to_string() == "+ I");

    CHECK(PauliOperator::parse("- Z2", 2).to_dense_string() == "-IZ");
}

TEST_CASE("parse accepts glued sparse and signed dense forms") {
    auto a = PauliOperator::parse("-Z5", 5);
    CHECK(a.phase() == 2);
    CHECK(a.letter_at(4) == 'Z');
    CHECK(a.weight() == 1);

    auto b = PauliOperator::parse("X1X2X3X4");
    CHECK(b.num_qubits() == 4);
    CHECK(b.to_dense_string() == "XXXX");

    CHECK(PauliOperator::parse("X1Z3", 4) == PauliOperator::parse("X1 Z3", 4));
    CHECK(PauliOperator::parse("-iY2X5") == PauliOperator::parse("-i Y2 X5"));
    CHECK(PauliOperator::parse("+iZ1", 2).phase() == 1);
    CHECK(PauliOperator::parse("iZ1", 2) == PauliOperator::parse("+iZ1", 2));
    CHECK(PauliOperator::parse("-IXZY").phase_prefix() == "-");
    CHECK(PauliOperator::parse("-IXZY").to_dense_string() == "-IXZY");
    CHECK(PauliOperator::parse("  X2\tZ3 ", 3) == PauliOperator::parse("X2Z3", 3));
}

TEST_CASE("parse errors carry a character position") {
    try {
        PauliOperator::parse("X1Q2");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
    try {
        PauliOperator::parse("IXQZ");
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("position 2") != std::string::npos);
    }
}

TEST_CASE("parse rejects malformed text") {
    CHECK_THROWS_AS(PauliOperator::parse(""), ParseError);
    CHECK_THROWS_AS(PauliOperator::parse("X0"), ParseError);
    CHECK_THROWS_AS(PauliOperator::parse("Q1"), ParseError);
    CHECK_THROWS_AS(PauliOperator::parse("X1 Y1"), ParseError);
    CHECK_THROWS_AS(PauliOperator::parse("X3", 2), ParseError);
    CHECK_THROWS_AS(PauliOperator::parse("-"), ParseError);
    CHECK_THROWS_AS(PauliOperator::parse("XYZQ"), ParseError);
}

TEST_CASE("letters round-trip through set_letter") {
    PauliOperator p(3);
    p.set_letter(0, 'Y');
    p.set_letter(2, 'X');
    CHECK(p.letter_at(0) == 'Y');
    CHECK(p.is_hermitian());
    p.set_letter(0, 'Z');   // replacing the Y must drop its phase factor
    CHECK(p.letter_at(0) == 'Z');
    CHECK(p.phase() == 0);
    CHECK(p.is_hermitian());
}

TEST_CASE("product matches dense matrix oracle exhaustively (n=2)") {
    auto ops = all_two_qubit();
    for (const auto& a : ops)
        for (const auto& b : ops) {
            PauliOperator c = a * b;
            CHECK(approx_eq(pauli_matrix(c), matmul(pauli_matrix(a), pauli_matrix(b))));
        }
}

TEST_CASE("commutation and hermiticity match the matrix oracle (n=2)") {
    auto ops = all_two_qubit();
    for (const auto& a : ops) {
        CHECK(a.is_hermitian() == approx_eq(pauli_matrix(a), testutil::dagger(pauli_matrix(a))));
        for (const auto& b : ops) {
            auto ab = matmul(pauli_matrix(a), pauli_matrix(b));
            auto ba = matmul(pauli_matrix(b), pauli_matrix(a));
            CHECK(a.commutes_with(b) == approx_eq(ab, ba));
        }
    }
}

TEST_CASE("adjoint and inverse (n=2)") {
    auto ops = all_two_qubit();
    for (const auto& a : ops) {
        CHECK(approx_eq(pauli_matrix(a.adjoint()), testutil::dagger(pauli_matrix(a))));
        CHECK((a * a.inverse()).is_identity());
        CHECK((a.inverse() * a).is_identity());
    }
}

TEST_CASE("random products agree with the oracle at n=3") {
    std::mt19937 rng(41);
    for (int it = 0; it < 200; ++it) {
        gf2::BitVec xa(3), za(3), xb(3), zb(3);
        for (int q = 0; q < 3; ++q) {
            if (rng() & 1) xa.set(q);
            if (rng() & 1) za.set(q);
            if (rng() & 1) xb.set(q);
            if (rng() & 1) zb.set(q);
        }
        PauliOperator a(3, xa, za, std::uint8_t(rng() & 3));
        PauliOperator b(3, xb, zb, std::uint8_t(rng() & 3));
        CHECK(approx_eq(pauli_matrix(a * b), matmul(pauli_matrix(a), pauli_matrix(b))));
    }
}

TEST_CASE("embed places letters at the offset") {
    auto p = PauliOperator::parse("X1 Y2", 2);
    auto e = p.embed(5, 2);
    CHECK(e.num_qubits() == 5);
    CHECK(e.letter_at(2) == 'X');
    CHECK(e.letter_at(3) == 'Y');
    CHECK(e.weight() == 2);
    CHECK(e.is_hermitian());
    CHECK_THROWS_AS(p.embed(3, 2), PreconditionError);
}

TEST_CASE("witness order: weight, then support sequence, then letters") {
    auto mk = [](const char* s) { return PauliOperator::parse(s, 4); };
    CHECK(pauli::witness_less(mk("X1"), mk("X1 X2")));
    CHECK(pauli::witness_less(mk("X1 X2"), mk("X1 X3")));
    CHECK(pauli::witness_less(mk("X4"), mk("X1 X2")));
    CHECK(pauli::witness_less(mk("X1 X2"), mk("X1 Y2")));
    CHECK(pauli::witness_less(mk("Y2"), mk("Z2")));
    CHECK_FALSE(pauli::witness_less(mk("Z2"), mk("Z2")));
}

TEST_CASE("symplectic rows round-trip") {
    auto p = PauliOperator::parse("i X1 Z2 Y4", 5);
    auto row = pauli::symplectic_row(p);
    CHECK(row.size() == 10);
    auto q = pauli::from_symplectic_row(row, p.phase());
    CHECK(q == p);
}

TEST_CASE("phase prefix attributes one i per Y") {
    CHECK(PauliOperator::parse("Y1", 1).phase_prefix() == "+");
    CHECK(PauliOperator::parse("- Y1", 1).phase_prefix() == "-");
    auto p = PauliOperator::parse("Y1", 1) * PauliOperator::parse("Y1", 1);
    CHECK(p.is_identity());
}
