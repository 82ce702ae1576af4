#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stabspread/circuit.hpp"
#include "stabspread/clifford.hpp"
#include "stabspread/pauli.hpp"

namespace stabspread {

// Phase-exact stabiliser-state simulator. The state is described by n
// stabiliser rows (signed Hermitian Paulis whose joint +1 eigenspace is the
// state) plus n destabiliser rows; destabiliser D_i anticommutes with
// stabiliser S_i and commutes with every other row, which makes both
// membership tests and deterministic-outcome signs exact group computations.
class TableauState {
  public:
    // |0...0>: stabilisers Z_i, destabilisers X_i.
    explicit TableauState(std::size_t n);

    // State stabilised by the given n independent commuting Hermitian rows
    // (built by forcing each row's measurement to +1 on |0...0>). Throws
    // InvariantError if the rows are inconsistent or fewer than n independent.
    static TableauState from_stabilisers(std::size_t n, const std::vector<PauliOperator>& rows);

    std::size_t num_qubits() const { return n_; }

    void apply_gate(const CliffordGate& g);
    void apply_map(const clifford::CliffordMap& m);
    void apply_pauli(const PauliOperator& p); // sign-exact frame flip

    struct MeasureResult {
        bool outcome = false;      // false: +1 eigenvalue, true: -1
        bool deterministic = false;
    };

    // Measures a Hermitian non-identity Pauli observable. When the outcome is
    // random, `forced` decides it if present, otherwise the rng flips a coin.
    MeasureResult measure_pauli(const PauliOperator& obs, std::optional<bool> forced,
                                std::mt19937_64& rng);
    MeasureResult measure(char basis, std::size_t q, std::optional<bool> forced,
                          std::mt19937_64& rng);

    // <P> for Hermitian Pauli P: +1, -1 or 0.
    int expectation(const PauliOperator& p) const;
    bool stabilised_by(const PauliOperator& p) const { return expectation(p) == +1; }

    const std::vector<PauliOperator>& stabiliser_rows() const { return stab_; }
    const std::vector<PauliOperator>& destabiliser_rows() const { return destab_; }

    // Checks hermiticity and the full pairing pattern; throws InvariantError.
    void validate() const;

  private:
    std::size_t n_ = 0;
    std::vector<PauliOperator> stab_, destab_;
};

struct TableauRunOptions {
    std::uint64_t seed = 0;
    // Outcome to take when a labelled measurement turns out random.
    std::map<std::string, bool> forced;
    // Start state; defaults to |0...0>.
    std::optional<TableauState> initial;
};

struct TableauRecord {
    std::map<std::string, bool> outcomes;
    std::map<std::string, bool> deterministic;
    std::vector<std::string> measured_order;
    TableauState state{1};
};

// Runs a T-free circuit. Conditions are evaluated over the outcomes recorded
// so far. Throws PreconditionError if the circuit contains a T gate.
TableauRecord simulate_tableau(const Circuit& c, const TableauRunOptions& opts = {});

} // namespace stabspread
