#pragma once

#include <cstddef>
#include <vector>

#include "stabspread/circuit.hpp"
#include "stabspread/code.hpp"
#include "stabspread/pauli.hpp"

namespace stabspread {

// Result of splitting the two-layer slab code surface3d(l, l, 2) into the
// single-layer code surface3d(l, l, 1) on the z = 0 edges tensored with a
// fully stabilised state on the remaining qubits.
struct LayerSplit {
    Circuit circuit;          // nearest-neighbour CNOTs on the slab register
    Circuit inverse_circuit;  // the same gates reversed (CNOT is an involution)
    StabiliserCode code_3d;   // the (l, l, 2) slab code
    StabiliserCode code_2d;   // the retained (l, l, 1) layer code
    std::vector<std::size_t> retained;  // slab qubit of each layer-code qubit
    std::vector<std::size_t> removed;   // qubits of the disentangled layer
    // Stabiliser rows of the disentangled factor: full-register operators
    // supported only on `removed`, positively signed.
    std::vector<PauliOperator> layer_rows;
};

// Builds the split for the distance-2 slab. Each CNOT acts between an edge
// at z = 0 and its translate at z = 1, which the lattice reports as nearest
// neighbours; the resulting conjugation is then checked over GF(2) to carry
// the slab group exactly onto (embedded layer code) x (layer rows) and both
// logicals onto the retained layer's representatives. Any failed check
// throws InvariantError: a split that cannot be certified is reported, not
// returned.
LayerSplit surface_layer_split(std::size_t l);

} // namespace stabspread
