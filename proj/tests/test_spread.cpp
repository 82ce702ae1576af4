#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "stabspread/analysis.hpp"
#include "stabspread/circuit.hpp"
#include "stabspread/clifford.hpp"
#include "stabspread/codes.hpp"
#include "stabspread/error.hpp"
#include "stabspread/family.hpp"
#include "stabspread/spread.hpp"
#include "test_util.hpp"

using namespace stabspread;
using clifford::CliffordMap;
using pauli::PauliOperator;

namespace {

// ---------------------------------------------------------------------------
// Oracle: image weight of a conjugated Pauli computed through dense matrices.
// The matrix U P U^dag is matched against every candidate Pauli with every
// phase; the weight of the matching candidate is returned. Independent of the
// symplectic conjugation code under test.
// ---------------------------------------------------------------------------
std::size_t oracle_image_weight(const testutil::Mat& u, const PauliOperator& e) {
    std::size_t n = e.num_qubits();
    REQUIRE(n <= 4);
    auto img = testutil::conj_by(u, testutil::pauli_matrix(e));
    std::size_t total = std::size_t(1) << (2 * n);
    for (std::size_t bits = 0; bits < total; ++bits) {
        gf2::BitVec x(n), z(n);
        for (std::size_t q = 0; q < n; ++q) {
            if ((bits >> q) & 1) x.set(q);
            if ((bits >> (n + q)) & 1) z.set(q);
        }
        for (int phase = 0; phase < 4; ++phase) {
            PauliOperator cand(n, x, z, phase);
            if (testutil::approx_eq(testutil::pauli_matrix(cand), img)) return cand.weight();
        }
    }
    REQUIRE_MESSAGE(false, "conjugated matrix is not a Pauli");
    return 0;
}

PauliOperator random_pauli(std::size_t n, std::mt19937& rng) {
    gf2::BitVec x(n), z(n);
    std::uniform_int_distribution<int> letter(0, 3);
    bool nontrivial = false;
    while (!nontrivial) {
        for (std::size_t q = 0; q < n; ++q) {
            int v = letter(rng);
            x.set(q, v == 1 || v == 2);
            z.set(q, v == 2 || v == 3);
            nontrivial |= (v != 0);
        }
    }
    PauliOperator p(n, x, z, 0);
    return p.is_hermitian() ? p : PauliOperator(n, x, z, 1);
}

Circuit random_clifford_circuit(std::size_t n, std::size_t depth, std::mt19937& rng) {
    Circuit c(n);
    std::uniform_int_distribution<int> pick(0, 8);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    static const char* one_q[] = {"H", "S", "SDG", "X", "Y", "Z"};
    for (std::size_t i = 0; i < depth; ++i) {
        int g = pick(rng);
        if (g < 6 || n < 2) {
            c.gate(one_q[g % 6], {qubit(rng)});
        } else {
            std::size_t a = qubit(rng), b = qubit(rng);
            while (b == a) b = qubit(rng);
            c.gate(g == 6 ? "CNOT" : (g == 7 ? "CZ" : "SWAP"), {a, b});
        }
    }
    return c;
}

// Exhaustively confirms that the worst spread over every non-identity Pauli
// equals the report's single-qubit maximum (as exact rationals).
void check_spread_equality_exhaustive(const CliffordMap& m) {
    std::size_t n = m.num_qubits();
    REQUIRE(n <= 6);
    auto report = spread_of_clifford(m);
    REQUIRE(report.exact_spread.has_value());
    REQUIRE(report.per_single_qubit.size() == 3 * n);
    std::size_t single_max = 0;
    for (const auto& [key, wt] : report.per_single_qubit) single_max = std::max(single_max, wt);
    CHECK(*report.exact_spread == Rational(static_cast<long long>(single_max), 1));

    Rational best(0, 1);
    std::size_t total = std::size_t(1) << (2 * n);
    for (std::size_t bits = 1; bits < total; ++bits) {
        gf2::BitVec x(n), z(n);
        for (std::size_t q = 0; q < n; ++q) {
            if ((bits >> q) & 1) x.set(q);
            if ((bits >> (n + q)) & 1) z.set(q);
        }
        Rational s = spread_of_pauli(m, PauliOperator(n, x, z, 0));
        CHECK(s <= *report.exact_spread); // no multi-qubit input beats the singles
        if (best < s) best = s;
    }
    CHECK(best == *report.exact_spread); // and the singles maximum is attained
}

} // namespace

TEST_CASE("rational ratios reduce and compare exactly") {
    CHECK(Rational(4, 2) == Rational(2, 1));
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(3, 1).str() == "3");
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(2, 3) <= Rational(2, 3));
    CHECK(doctest::Approx(Rational(7, 2).value()) == 3.5);
    CHECK((Rational(3, 2) * Rational(4, 3)) == Rational(2, 1));
    CHECK_THROWS_AS(Rational(1, 0), PreconditionError);
}

TEST_CASE("pauli spread matches the dense conjugation oracle gate by gate") {
    struct Case {
        CliffordMap map;
        testutil::Mat mat;
    };
    std::size_t n = 2;
    std::vector<Case> cases;
    cases.push_back({CliffordMap::hadamard(n, 0), testutil::h_mat(n, 0)});
    cases.push_back({CliffordMap::phase_s(n, 1), testutil::s_mat(n, 1)});
    cases.push_back({CliffordMap::cnot(n, 0, 1), testutil::cnot_mat(n, 0, 1)});
    cases.push_back({CliffordMap::cz(n, 0, 1), testutil::cz_mat(n, 0, 1)});
    auto entangler = CliffordMap::cnot(n, 0, 1).compose_after(CliffordMap::hadamard(n, 0));
    cases.push_back({entangler, testutil::matmul(testutil::cnot_mat(n, 0, 1), testutil::h_mat(n, 0))});

    for (const auto& cs : cases) {
        for (std::size_t bits = 1; bits < 16; ++bits) {
            gf2::BitVec x(n), z(n);
            for (std::size_t q = 0; q < n; ++q) {
                if ((bits >> q) & 1) x.set(q);
                if ((bits >> (n + q)) & 1) z.set(q);
            }
            PauliOperator e(n, x, z, 0);
            Rational got = spread_of_pauli(cs.map, e);
            Rational want(static_cast<long long>(oracle_image_weight(cs.mat, e)),
                          static_cast<long long>(e.weight()));
            CHECK(got == want);
        }
    }
}

TEST_CASE("identity channel has spread one and rejects identity input") {
    auto id = CliffordMap::identity(3);
    CHECK(spread_of_pauli(id, PauliOperator::single(3, 1, 'Y')) == Rational(1, 1));
    auto report = spread_of_clifford(id, "identity");
    CHECK(*report.exact_spread == Rational(1, 1));
    CHECK(report.channel_label == "identity");
    CHECK(report.bound_kind == BoundKind::exact_clifford);
    CHECK_THROWS_AS(spread_of_pauli(id, PauliOperator::identity(3)), PreconditionError);
    // -P is still "identity up to phase": its spread is equally undefined.
    PauliOperator minus_id(3, gf2::BitVec(3), gf2::BitVec(3), 2);
    CHECK_THROWS_AS(spread_of_pauli(id, minus_id), PreconditionError);
}

TEST_CASE("clifford spread report examples") {
    SUBCASE("single cnot spreads x of the control onto both qubits") {
        auto report = spread_of_clifford(CliffordMap::cnot(2, 0, 1), "cnot");
        CHECK(*report.exact_spread == Rational(2, 1));
        CHECK(report.per_single_qubit.at("X1") == 2); // X1 -> X1 X2
        CHECK(report.per_single_qubit.at("Z1") == 1);
        CHECK(report.per_single_qubit.at("Z2") == 2); // Z2 -> Z1 Z2
        CHECK(report.per_single_qubit.at("X2") == 1);
        CHECK(report.per_single_qubit.at("Y1") == 2);
        CHECK(report.per_single_qubit.at("Y2") == 2);
    }
    SUBCASE("transversal hadamard on a steane block does not spread at all") {
        auto code = steane();
        auto m = CliffordMap::identity(code.n);
        for (std::size_t q = 0; q < code.n; ++q)
            m = CliffordMap::hadamard(code.n, q).compose_after(m);
        auto report = spread_of_clifford(m, "transversal_h_steane");
        CHECK(*report.exact_spread == Rational(1, 1));
        for (const auto& [key, wt] : report.per_single_qubit) CHECK(wt == 1);
    }
    SUBCASE("swap permutes but never spreads") {
        auto report = spread_of_clifford(CliffordMap::swap(3, 0, 2));
        CHECK(*report.exact_spread == Rational(1, 1));
    }
    SUBCASE("json shape") {
        auto j = spread_of_clifford(CliffordMap::cnot(2, 0, 1), "cnot").to_json();
        CHECK(j["exact_spread"] == "2");
        CHECK(j["bound_kind"] == "exact_clifford");
        CHECK(j["per_single_qubit"]["X1"] == 2);
    }
}

TEST_CASE("worst-case spread is attained on single-qubit inputs: exhaustive up to n=6") {
    // All 2-qubit generator gates.
    for (const auto& m :
         {CliffordMap::hadamard(2, 0), CliffordMap::hadamard(2, 1), CliffordMap::phase_s(2, 0),
          CliffordMap::phase_s(2, 1), CliffordMap::phase_sdg(2, 0), CliffordMap::pauli_x(2, 0),
          CliffordMap::pauli_y(2, 1), CliffordMap::pauli_z(2, 0), CliffordMap::cnot(2, 0, 1),
          CliffordMap::cnot(2, 1, 0), CliffordMap::cz(2, 0, 1), CliffordMap::swap(2, 0, 1)})
        check_spread_equality_exhaustive(m);

    // Structured channels where the maximum sits on different letters.
    check_spread_equality_exhaustive(
        CliffordMap::cnot(4, 0, 1)
            .compose_after(CliffordMap::cnot(4, 1, 2))
            .compose_after(CliffordMap::cnot(4, 2, 3))); // reversed ladder
    {
        auto m = CliffordMap::identity(5);
        for (std::size_t q = 1; q < 5; ++q) m = CliffordMap::cnot(5, 0, q).compose_after(m);
        check_spread_equality_exhaustive(m); // fan-out: X1 covers everything
    }

    // Seeded random circuits across n = 2..6; at least 50 in total.
    std::mt19937 rng(777);
    std::size_t done = 0;
    for (std::size_t n = 2; n <= 6; ++n) {
        for (std::size_t trial = 0; trial < 12; ++trial) {
            auto c = random_clifford_circuit(n, 10, rng);
            check_spread_equality_exhaustive(c.to_clifford_map());
            ++done;
        }
    }
    CHECK(done >= 50);
}

TEST_CASE("circuit to clifford map conversion matches dense matrices") {
    std::mt19937 rng(4242);
    for (std::size_t trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2; // n in {2,3}
        auto c = random_clifford_circuit(n, 8, rng);
        auto m = c.to_clifford_map();
        auto u = testutil::circuit_matrix(c);
        for (std::size_t rep = 0; rep < 6; ++rep) {
            PauliOperator e = random_pauli(n, rng);
            auto img = m.conjugate(e);
            CHECK(testutil::approx_eq(testutil::pauli_matrix(img),
                                      testutil::conj_by(u, testutil::pauli_matrix(e))));
        }
    }
}

TEST_CASE("lightcone bound: hand oracle on the cnot ladder") {
    // Ladder 1->2->3->4. An X on qubit 1 walks down the whole chain, so its
    // cone is {1,2,3,4}; qubit 4's cone is just itself.
    Circuit c(4);
    c.cnot(0, 1).cnot(1, 2).cnot(2, 3);
    auto report = lightcone_spread_bound(c, "ladder4");
    CHECK(report.bound_kind == BoundKind::lightcone);
    CHECK(*report.lightcone_bound == 4);
    CHECK_FALSE(report.exact_spread.has_value());
    // The exact spread of the same circuit is also 4 here (X1 image X1X2X3X4).
    auto exact = spread_of_clifford(c.to_clifford_map());
    CHECK(*exact.exact_spread == Rational(4, 1));

    Circuit depth1(5);
    for (std::size_t q = 0; q < 5; ++q) depth1.h(q);
    CHECK(*lightcone_spread_bound(depth1).lightcone_bound == 1);

    Circuit with_t(3);
    with_t.h(0).t(0).cnot(0, 1).tdg(1).h(1);
    CHECK(*lightcone_spread_bound(with_t).lightcone_bound == 2);
    CHECK_THROWS_AS(with_t.to_clifford_map(), PreconditionError); // non-Clifford: bound only
}

TEST_CASE("lightcone bound dominates the exact spread on random circuits") {
    std::mt19937 rng(90210);
    std::uniform_int_distribution<std::size_t> pick_n(2, 8), pick_depth(1, 10);
    for (std::size_t trial = 0; trial < 200; ++trial) {
        std::size_t n = pick_n(rng);
        auto c = random_clifford_circuit(n, pick_depth(rng), rng);
        std::size_t cone = *lightcone_spread_bound(c).lightcone_bound;
        Rational exact = *spread_of_clifford(c.to_clifford_map()).exact_spread;
        CHECK(exact <= Rational(static_cast<long long>(cone), 1));
    }
}

TEST_CASE("lightcone bound rejects adaptive channels") {
    Circuit c(2);
    c.h(0).measure('Z', 0, "m");
    CHECK_THROWS_AS(lightcone_spread_bound(c), PreconditionError);
    Circuit c2(2);
    c2.cpauli("1", PauliOperator::single(2, 0, 'X'));
    CHECK_THROWS_AS(lightcone_spread_bound(c2), PreconditionError);
}

TEST_CASE("spread is sub-multiplicative under composition") {
    std::mt19937 rng(31337);
    for (std::size_t trial = 0; trial < 30; ++trial) {
        std::size_t n = 4;
        auto m1 = random_clifford_circuit(n, 6, rng).to_clifford_map();
        auto m2 = random_clifford_circuit(n, 6, rng).to_clifford_map();
        Rational s1 = *spread_of_clifford(m1).exact_spread;
        Rational s2 = *spread_of_clifford(m2).exact_spread;
        Rational s12 = *spread_of_clifford(m2.compose_after(m1)).exact_spread;
        CHECK(s12 <= s1 * s2);
    }
}

TEST_CASE("transversal and locality-preserving bounds") {
    CHECK(transversal_bound(1) == 1);
    CHECK(transversal_bound(2) == 2);
    CHECK(transversal_bound(5) == 5);
    CHECK_THROWS_AS(transversal_bound(0), PreconditionError);

    CHECK(locality_preserving_bound(0, 2) == 1);
    CHECK(locality_preserving_bound(1, 1) == 3);
    CHECK(locality_preserving_bound(1, 2) == 9);
    CHECK(locality_preserving_bound(1, 3) == 27);
    CHECK(locality_preserving_bound(2, 1) == 5);
    CHECK_THROWS_AS(locality_preserving_bound(1, 0), PreconditionError);

    // A transversal CNOT between two steane blocks saturates the block bound.
    std::size_t n = 14;
    auto m = CliffordMap::identity(n);
    for (std::size_t q = 0; q < 7; ++q) m = CliffordMap::cnot(n, q, q + 7).compose_after(m);
    Rational exact = *spread_of_clifford(m, "transversal_cnot").exact_spread;
    CHECK(exact == Rational(2, 1));
    CHECK(exact <= Rational(static_cast<long long>(transversal_bound(2)), 1));
}

TEST_CASE("family spread trend: flat for transversal gates, growing for ladders") {
    auto surface = make_family("surface2d");
    auto transversal_h = [&](std::size_t l) {
        const auto& code = surface.instantiate(l);
        auto m = CliffordMap::identity(code.n);
        for (std::size_t q = 0; q < code.n; ++q)
            m = CliffordMap::hadamard(code.n, q).compose_after(m);
        return m;
    };
    auto flat = family_spread_trend(surface, transversal_h, {2, 3, 4});
    CHECK(flat.verdict == "bounded");
    for (const auto& s : flat.spreads) CHECK(s == Rational(1, 1));

    auto toric = make_family("toric");
    auto ladder = [](std::size_t l) {
        auto m = CliffordMap::identity(l);
        for (std::size_t q = 0; q + 1 < l; ++q) m = CliffordMap::cnot(l, q, q + 1).compose_after(m);
        return m;
    };
    auto growing = family_spread_trend(toric, ladder, {2, 3, 4, 5});
    CHECK(growing.verdict == "unbounded_trend");
    CHECK(growing.spreads.back() == Rational(5, 1));
    CHECK(growing.to_json()["verdict"] == "unbounded_trend");

    CHECK_THROWS_AS(family_spread_trend(toric, ladder, {2}), PreconditionError);
    CHECK_THROWS_AS(family_spread_trend(toric, ladder, {2, 99}), PreconditionError);
}

TEST_CASE("bounded-spread channels preserve logical structure on the steane code") {
    // A spread-s channel maps a weight-w logical to a logical of weight at
    // most s*w, so distance ratios across classes move by at most s. Checked
    // here for the transversal hadamard (s = 1) on the steane code, whose X
    // and Z checks share supports, making transversal H a logical operation
    // that swaps the X and Z classes.
    auto code = steane();
    auto m = CliffordMap::identity(code.n);
    for (std::size_t q = 0; q < code.n; ++q)
        m = CliffordMap::hadamard(code.n, q).compose_after(m);
    Rational s = *spread_of_clifford(m).exact_spread;
    CHECK(s == Rational(1, 1));

    GroupIndex idx(code);
    auto report = code_distance(code);
    for (const auto& [label, cd] : report.per_logical) {
        PauliOperator image = m.conjugate(cd.witness);
        CHECK(idx.in_normaliser(image));
        auto cls = idx.logical_class(image);
        CHECK_FALSE(cls.trivial());
        // Weight can only grow by the spread factor...
        CHECK(image.weight() <= cd.witness.weight() * std::size_t(s.num));
        // ...so the image class distance is bounded by s times the source's.
        const auto& target = report.per_logical.at(class_name(cls, code.k));
        CHECK(target.lower <= cd.witness.weight() * std::size_t(s.num));
    }
    // Transversal H on a CSS self-dual layout exchanges X1 and Z1.
    auto x_img = idx.logical_class(m.conjugate(report.per_logical.at("X1").witness));
    CHECK(class_name(x_img, code.k) == "Z1");
}
