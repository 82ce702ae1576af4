#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "stabspread/clifford.hpp"
#include "stabspread/error.hpp"
#include "test_util.hpp"

using namespace stabspread;
using clifford::CliffordMap;
using pauli::PauliOperator;
using testutil::Mat;
using testutil::approx_eq;
using testutil::conj_by;
using testutil::pauli_matrix;

namespace {

std::vector<PauliOperator> all_paulis(std::size_t n) {
    std::vector<PauliOperator> out;
    for (std::size_t xb = 0; xb < (std::size_t(1) << n); ++xb)
        for (std::size_t zb = 0; zb < (std::size_t(1) << n); ++zb)
            for (int ph = 0; ph < 4; ++ph) {
                gf2::BitVec x(n), z(n);
                for (std::size_t q = 0; q < n; ++q) {
                    if ((xb >> q) & 1) x.set(q);
                    if ((zb >> q) & 1) z.set(q);
                }
                out.emplace_back(n, x, z, std::uint8_t(ph));
            }
    return out;
}

struct NamedGate {
    CliffordMap map;
    Mat mat;
};

std::vector<NamedGate> two_qubit_generators() {
    std::vector<NamedGate> gates;
    for (std::size_t q = 0; q < 2; ++q) {
        gates.push_back({CliffordMap::hadamard(2, q), testutil::h_mat(2, q)});
        gates.push_back({CliffordMap::phase_s(2, q), testutil::s_mat(2, q)});
        gates.push_back({CliffordMap::phase_sdg(2, q), testutil::sdg_mat(2, q)});
        gates.push_back({CliffordMap::pauli_x(2, q), pauli_matrix(PauliOperator::single(2, q, 'X'))});
        gates.push_back({CliffordMap::pauli_y(2, q), pauli_matrix(PauliOperator::single(2, q, 'Y'))});
        gates.push_back({CliffordMap::pauli_z(2, q), pauli_matrix(PauliOperator::single(2, q, 'Z'))});
    }
    gates.push_back({CliffordMap::cnot(2, 0, 1), testutil::cnot_mat(2, 0, 1)});
    gates.push_back({CliffordMap::cnot(2, 1, 0), testutil::cnot_mat(2, 1, 0)});
    gates.push_back({CliffordMap::cz(2, 0, 1), testutil::cz_mat(2, 0, 1)});
    gates.push_back({CliffordMap::swap(2, 0, 1),
                     testutil::matmul(testutil::cnot_mat(2, 0, 1),
                                      testutil::matmul(testutil::cnot_mat(2, 1, 0),
                                                       testutil::cnot_mat(2, 0, 1)))});
    return gates;
}

} // namespace

TEST_CASE("every generator's conjugation matches the matrix oracle") {
    auto paulis = all_paulis(2);
    for (const auto& g : two_qubit_generators()) {
        CHECK(g.map.is_valid());
        for (const auto& p : paulis) {
            PauliOperator img = g.map.conjugate(p);
            CHECK(approx_eq(pauli_matrix(img), conj_by(g.mat, pauli_matrix(p))));
        }
    }
}

TEST_CASE("composition matches sequential conjugation and the matrix oracle") {
    std::mt19937 rng(99);
    auto gates = two_qubit_generators();
    auto paulis = all_paulis(2);
    for (int it = 0; it < 60; ++it) {
        CliffordMap total = CliffordMap::identity(2);
        Mat mat = testutil::eye(4);
        std::vector<const NamedGate*> seq;
        for (int s = 0; s < 5; ++s) seq.push_back(&gates[rng() % gates.size()]);
        for (const auto* g : seq) {
            total = g->map.compose_after(total);
            mat = testutil::matmul(g->mat, mat);
        }
        CHECK(total.is_valid());
        const auto& p = paulis[rng() % paulis.size()];
        PauliOperator via_map = total.conjugate(p);
        PauliOperator via_seq = p;
        for (const auto* g : seq) via_seq = g->map.conjugate(via_seq);
        CHECK(via_map == via_seq);
        CHECK(approx_eq(pauli_matrix(via_map), conj_by(mat, pauli_matrix(p))));
    }
}

TEST_CASE("inverse composes to the identity") {
    std::mt19937 rng(123);
    auto gates = two_qubit_generators();
    for (int it = 0; it < 40; ++it) {
        CliffordMap total = CliffordMap::identity(2);
        for (int s = 0; s < 6; ++s) total = gates[rng() % gates.size()].map.compose_after(total);
        CliffordMap inv = total.inverse();
        CHECK(inv.is_valid());
        CHECK(inv.compose_after(total) == CliffordMap::identity(2));
        CHECK(total.compose_after(inv) == CliffordMap::identity(2));
    }
}

TEST_CASE("inverse at n=3 with signs") {
    CliffordMap u = CliffordMap::identity(3);
    u = CliffordMap::hadamard(3, 0).compose_after(u);
    u = CliffordMap::cnot(3, 0, 1).compose_after(u);
    u = CliffordMap::phase_s(3, 1).compose_after(u);
    u = CliffordMap::cz(3, 1, 2).compose_after(u);
    u = CliffordMap::pauli_y(3, 2).compose_after(u);
    CliffordMap inv = u.inverse();
    CHECK(inv.compose_after(u) == CliffordMap::identity(3));
    for (std::size_t q = 0; q < 3; ++q) {
        CHECK(u.conjugate(inv.image_x(q)) == PauliOperator::single(3, q, 'X'));
        CHECK(u.conjugate(inv.image_z(q)) == PauliOperator::single(3, q, 'Z'));
    }
}

TEST_CASE("tensor product matches the kron structure") {
    CliffordMap a = CliffordMap::phase_s(1, 0);
    CliffordMap b = CliffordMap::hadamard(1, 0);
    CliffordMap t = a.tensor(b);
    CHECK(t.num_qubits() == 2);
    CHECK(t.is_valid());
    CHECK(t.image_x(0) == PauliOperator::single(2, 0, 'Y'));
    CHECK(t.image_x(1) == PauliOperator::single(2, 1, 'Z'));
    CHECK(t.image_z(1) == PauliOperator::single(2, 1, 'X'));
}

TEST_CASE("from_images validates the symplectic conditions") {
    std::vector<PauliOperator> ix = {PauliOperator::single(2, 0, 'X'),
                                     PauliOperator::single(2, 1, 'X')};
    std::vector<PauliOperator> iz = {PauliOperator::single(2, 0, 'Z'),
                                     PauliOperator::single(2, 1, 'Z')};
    CHECK(CliffordMap::from_images(ix, iz) == CliffordMap::identity(2));

    auto bad_z = iz;
    bad_z[0] = PauliOperator::single(2, 1, 'Z');   // commutes with X1: invalid
    CHECK_THROWS_AS(CliffordMap::from_images(ix, bad_z), PreconditionError);

    auto bad_phase = iz;
    bad_phase[0] = PauliOperator(2, gf2::BitVec(2), gf2::BitVec::from_indices(2, {0}), 1);
    CHECK_THROWS_AS(CliffordMap::from_images(ix, bad_phase), PreconditionError);
}

TEST_CASE("conjugation preserves products and commutation") {
    std::mt19937 rng(7);
    auto gates = two_qubit_generators();
    auto paulis = all_paulis(2);
    for (int it = 0; it < 100; ++it) {
        CliffordMap u = CliffordMap::identity(2);
        for (int s = 0; s < 4; ++s) u = gates[rng() % gates.size()].map.compose_after(u);
        const auto& a = paulis[rng() % paulis.size()];
        const auto& b = paulis[rng() % paulis.size()];
        CHECK(u.conjugate(a * b) == u.conjugate(a) * u.conjugate(b));
        CHECK(u.conjugate(a).commutes_with(u.conjugate(b)) == a.commutes_with(b));
    }
}
