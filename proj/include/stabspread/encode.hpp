#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

#include "stabspread/code.hpp"
#include "stabspread/dense.hpp"
#include "stabspread/tableau.hpp"

namespace stabspread {

// Codeword eigenstate of a k = 1 code, described in the stabiliser picture:
// the state stabilised by the code's generators plus `signed_logical` (for
// example +Z-bar for |0bar>, -X-bar for |-bar>). The rows may live on a block
// inside a larger register; qubits outside [offset, offset + n) must then be
// pinned by `extra_rows`.
TableauState encoded_tableau(const StabiliserCode& code, const PauliOperator& signed_logical,
                             std::size_t total_qubits, std::size_t offset,
                             const std::vector<PauliOperator>& extra_rows = {});

// alpha |0bar> + beta |1bar> of a k = 1 CSS code, written out over amplitudes
// (needs code.n within the dense limit). |0bar> is the uniform superposition
// over the X-stabiliser row space; |1bar> adds the X-logical representative.
DenseState encoded_dense(const StabiliserCode& code, std::complex<double> alpha,
                         std::complex<double> beta);

// Product of a block state with pinned computational-basis qubits: the block
// occupies [offset, offset + block.num_qubits()); every other qubit must
// appear in `fixed_bits`.
DenseState block_product_state(std::size_t total_qubits, std::size_t offset,
                               const DenseState& block, const std::map<std::size_t, bool>& fixed_bits);

} // namespace stabspread
