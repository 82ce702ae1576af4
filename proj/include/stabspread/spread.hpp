#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabspread/circuit.hpp"
#include "stabspread/clifford.hpp"
#include "stabspread/family.hpp"
#include "stabspread/pauli.hpp"

namespace stabspread {

// Exact ratio of operator weights, kept in lowest terms.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
};

Rational operator*(const Rational& a, const Rational& b);

// How a channel's worst-case error magnification was established.
enum class BoundKind { exact_clifford, lightcone, transversal, locality_preserving };

std::string bound_kind_name(BoundKind kind);

struct SpreadReport {
    std::string channel_label;
    // Worst-case wt(image)/wt(input) over all non-identity Pauli inputs;
    // absent when only an upper bound is known.
    std::optional<Rational> exact_spread;
    // Image weight of every single-qubit Pauli, keyed "X3"-style (1-based).
    std::map<std::string, std::size_t> per_single_qubit;
    std::optional<std::size_t> lightcone_bound;
    BoundKind bound_kind = BoundKind::exact_clifford;

    nlohmann::json to_json() const;
};

// wt(m(e)) / wt(e). Precondition: e is not the identity.
Rational spread_of_pauli(const clifford::CliffordMap& m, const PauliOperator& e);

// Exact worst-case spread of a Clifford channel. The maximum over all Pauli
// inputs is attained on a single-qubit input, so scanning the 3n generators'
// images is exhaustive.
SpreadReport spread_of_clifford(const clifford::CliffordMap& m, const std::string& label = "");

// Upper bound for a unitary circuit (Clifford gates and T): forward-propagate
// the possible support of each single-qubit error through the gate list.
// Precondition: no measurements or conditioned operations.
SpreadReport lightcone_spread_bound(const Circuit& c, const std::string& label = "");

// Transversal circuits acting across `num_blocks` code blocks spread any
// error over at most that many qubits per original location.
std::size_t transversal_bound(std::size_t num_blocks);

// (2*epsilon + 1)^dimension for an epsilon-local channel on a
// `dimension`-dimensional lattice. Precondition: dimension >= 1.
std::size_t locality_preserving_bound(std::size_t epsilon, std::size_t dimension);

struct SpreadTrend {
    std::string family;
    std::vector<std::size_t> sizes;
    std::vector<Rational> spreads;
    // "bounded" | "unbounded_trend" | "inconclusive"
    std::string verdict;

    nlohmann::json to_json() const;
};

// Exact spread of channel_builder(l) at each size, with a growth verdict:
// bounded if the values stay within 10% of the first, unbounded_trend if they
// grow monotonically by more than 10% overall, inconclusive otherwise.
SpreadTrend family_spread_trend(
    const CodeFamily& family,
    const std::function<clifford::CliffordMap(std::size_t)>& channel_builder,
    const std::vector<std::size_t>& sizes);

} // namespace stabspread
