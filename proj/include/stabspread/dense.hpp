#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stabspread/circuit.hpp"
#include "stabspread/pauli.hpp"

namespace stabspread {

// Exact state-vector simulator for small registers (n <= 22). Qubit q is bit
// q of the basis index, least significant bit first.
class DenseState {
  public:
    static constexpr std::size_t kMaxQubits = 22;

    explicit DenseState(std::size_t n); // |0...0>
    // Explicit amplitudes: must have length 2^n and unit norm (within 1e-9).
    DenseState(std::size_t n, std::vector<std::complex<double>> amps);

    std::size_t num_qubits() const { return n_; }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

    void apply_gate(const CliffordGate& g);
    void apply_t(std::size_t q, bool dagger);
    void apply_pauli(const PauliOperator& p);

    struct MeasureResult {
        bool outcome = false;
        bool deterministic = false;
        double prob_one = 0.0; // pre-measurement probability of outcome 1
    };

    // Projective X- or Z-basis measurement with renormalisation. A forced
    // outcome of probability ~0 throws PreconditionError.
    MeasureResult measure(char basis, std::size_t q, std::optional<bool> forced,
                          std::mt19937_64& rng);

    double norm() const;
    std::complex<double> inner(const DenseState& other) const;    // <this|other>
    double fidelity_with(const DenseState& other) const;          // |<this|other>|^2
    std::complex<double> expectation(const PauliOperator& p) const;

  private:
    std::size_t n_ = 0;
    std::vector<std::complex<double>> amps_;
};

struct DenseRunOptions {
    std::uint64_t seed = 0;
    std::map<std::string, bool> forced;
    std::optional<DenseState> initial;
};

struct DenseRecord {
    std::map<std::string, bool> outcomes;
    std::map<std::string, bool> deterministic;
    std::vector<std::string> measured_order;
    DenseState state{1};
};

// Runs any circuit (Clifford gates, T, measurements, conditioned operations).
DenseRecord simulate_dense(const Circuit& c, const DenseRunOptions& opts = {});

} // namespace stabspread
