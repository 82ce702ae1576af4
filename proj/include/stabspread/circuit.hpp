#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "stabspread/clifford.hpp"
#include "stabspread/pauli.hpp"

namespace stabspread {

using pauli::PauliOperator;

// Boolean expression over measurement outcome labels.
// Grammar:  or   := xor ('|' xor)*
//           xor  := and ('^' and)*
//           and  := unary ('&' unary)*
//           unary := '!' unary | '(' or ')' | label | '0' | '1'
// Labels are [A-Za-z_][A-Za-z0-9_]*.
class Condition {
  public:
    Condition() = default;
    static Condition parse(const std::string& text);

    bool evaluate(const std::map<std::string, bool>& outcomes) const;
    const std::set<std::string>& labels() const { return labels_; }
    const std::string& text() const { return text_; }
    bool empty() const { return root_ == nullptr; }

    struct Node;

  private:
    std::string text_;
    std::set<std::string> labels_;
    std::shared_ptr<const Node> root_;
};

// H, S, SDG, X, Y, Z (1 target); CNOT, CZ, SWAP (2 targets). Targets 0-based.
struct CliffordGate {
    std::string name;
    std::vector<std::size_t> targets;
};

struct TGate {
    std::size_t target = 0;
    bool dagger = false;
};

struct Measure {
    char basis = 'Z'; // 'X' or 'Z'
    std::size_t target = 0;
    std::string outcome_label;
};

struct ControlledPauli {
    Condition condition;
    PauliOperator pauli;
};

// Clifford gate applied when the condition is true (classically controlled
// non-Pauli corrections, e.g. the S factor of a teleported T correction).
struct ControlledGate {
    Condition condition;
    CliffordGate gate;
};

using CircuitOp = std::variant<CliffordGate, TGate, Measure, ControlledPauli, ControlledGate>;

// Conjugation map of a single unconditioned gate on an n-qubit register.
clifford::CliffordMap gate_map(const CliffordGate& g, std::size_t n);

struct Circuit {
    std::size_t n = 0;
    std::vector<CircuitOp> ops;

    Circuit() = default;
    explicit Circuit(std::size_t qubits) : n(qubits) {}

    Circuit& gate(const std::string& name, std::vector<std::size_t> targets);
    Circuit& h(std::size_t q) { return gate("H", {q}); }
    Circuit& s(std::size_t q) { return gate("S", {q}); }
    Circuit& sdg(std::size_t q) { return gate("SDG", {q}); }
    Circuit& x(std::size_t q) { return gate("X", {q}); }
    Circuit& y(std::size_t q) { return gate("Y", {q}); }
    Circuit& z(std::size_t q) { return gate("Z", {q}); }
    Circuit& cnot(std::size_t c, std::size_t t) { return gate("CNOT", {c, t}); }
    Circuit& cz(std::size_t a, std::size_t b) { return gate("CZ", {a, b}); }
    Circuit& swap_gate(std::size_t a, std::size_t b) { return gate("SWAP", {a, b}); }
    Circuit& t(std::size_t q);
    Circuit& tdg(std::size_t q);
    Circuit& measure(char basis, std::size_t q, const std::string& label);
    Circuit& cpauli(const std::string& condition, const PauliOperator& p);
    Circuit& cgate(const std::string& condition, const std::string& name,
                   std::vector<std::size_t> targets);
    Circuit& append(const Circuit& other); // same register

    // Targets in range with correct arity, distinct targets per gate, labels
    // unique and defined before any condition uses them.
    void validate() const;

    bool has_measurement() const;
    bool has_t() const;
    bool is_unitary() const { return !has_measurement(); }
    bool is_clifford_unitary() const { return !has_measurement() && !has_t(); }
    std::size_t count_gate(const std::string& name) const;

    // Lossless conversion for measurement-free, T-free circuits.
    clifford::CliffordMap to_clifford_map() const;

    // Line-oriented text: `N <qubits>` header, then one op per line with
    // 1-based targets: `H 1`, `CNOT 1 2`, `T 3`, `TDG 3`,
    // `MEASURE Z 5 m1`, `CPAULI (m1^m2)|m3 X1 X2`, `CGATE m1 S 4`.
    std::string to_text() const;
    static Circuit from_text(const std::string& text);

    nlohmann::json to_json() const;
    static Circuit from_json(const nlohmann::json& j);
};

} // namespace stabspread
