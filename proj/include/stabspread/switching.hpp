#pragma once

#include <vector>

#include "stabspread/circuit.hpp"
#include "stabspread/gadgets.hpp"
#include "stabspread/pauli.hpp"

namespace stabspread {

// Direction of the transversal-T trade: the 7-qubit CSS block either absorbs
// a prepared 8-qubit ancilla block to become the 15-qubit punctured
// Reed-Muller block, or releases it again.
enum class SwitchDirection { to_reed_muller, to_steane };

// The 15-qubit CNOT circuit realising the switch. Qubits 0..6 carry the
// 7-qubit block, qubits 7..14 the ancilla block. The two directions are
// exact inverses of each other (the gate list reversed).
Circuit steane_rm_switch_circuit(SwitchDirection direction);

// Eight independent, mutually commuting, positively signed generators
// supported only on qubits 7..14. An ancilla block stabilised by exactly
// these rows, adjoined to any 7-qubit code state, is carried by the
// to_reed_muller circuit onto a 15-qubit code state with the same logical
// content. Derived by pulling the 15-qubit code's generators back through
// the inverse circuit and extracting the combinations with no support on
// qubits 0..6; a derivation that fails its own consistency checks throws
// InvariantError rather than returning a partial answer.
std::vector<PauliOperator> switch_ancilla_stabilisers();

// Channel wrapper for verify_logical_action; the expected logical action is
// the identity in both directions.
LogicalChannel switch_channel(SwitchDirection direction);

} // namespace stabspread
