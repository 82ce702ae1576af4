#include "stabspread/switching.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stabspread/clifford.hpp"
#include "stabspread/codes.hpp"
#include "stabspread/error.hpp"
#include "stabspread/gf2.hpp"

namespace stabspread {

namespace {

constexpr std::size_t kBlock = 7;   // data block qubits 0..6
constexpr std::size_t kTotal = 15;  // data block + 8 ancilla qubits

// Gate list in to_reed_muller temporal order: first a transversal CNOT fan
// from the 7-qubit block onto its partner ancilla qubits, then three CNOTs
// folding the parity of qubits 11, 12, 13 onto the last qubit. This fold set
// is the unique one for which every 7-qubit-block generator lands exactly on
// a 15-qubit generator and the pulled-back group contains eight independent
// rows clear of the data block.
std::vector<std::pair<std::size_t, std::size_t>> switch_cnots() {
    std::vector<std::pair<std::size_t, std::size_t>> g;
    for (std::size_t i = 0; i < kBlock; ++i) g.emplace_back(i, i + kBlock);
    g.emplace_back(11, 14);
    g.emplace_back(12, 14);
    g.emplace_back(13, 14);
    return g;
}

} // namespace

Circuit steane_rm_switch_circuit(SwitchDirection direction) {
    auto gates = switch_cnots();
    if (direction == SwitchDirection::to_steane)
        std::reverse(gates.begin(), gates.end());
    Circuit c(kTotal);
    for (const auto& [ctl, tgt] : gates) c.cnot(ctl, tgt);
    return c;
}

std::vector<PauliOperator> switch_ancilla_stabilisers() {
    const StabiliserCode rm = reed_muller15();
    const clifford::CliffordMap inverse =
        steane_rm_switch_circuit(SwitchDirection::to_steane).to_clifford_map();

    // Pull every 15-qubit generator back through the inverse circuit.
    std::vector<PauliOperator> images;
    images.reserve(rm.stabilisers.size());
    for (const auto& g : rm.stabilisers) images.push_back(inverse.conjugate(g));

    // Combinations of the images with no support on the data block solve a
    // GF(2) system: one equation per x/z coordinate of qubits 0..6.
    gf2::Matrix system(images.size());
    for (std::size_t q = 0; q < kBlock; ++q) {
        gf2::BitVec xrow(images.size()), zrow(images.size());
        for (std::size_t i = 0; i < images.size(); ++i) {
            xrow.set(i, images[i].x_bits().get(q));
            zrow.set(i, images[i].z_bits().get(q));
        }
        system.add_row(xrow);
        system.add_row(zrow);
    }

    std::vector<PauliOperator> rows;
    gf2::RowBasis independent(2 * kTotal);
    for (const auto& combo : gf2::nullspace(system)) {
        PauliOperator p = PauliOperator::identity(kTotal);
        for (std::size_t i = 0; i < images.size(); ++i)
            if (combo.get(i)) p = p * images[i];
        gf2::BitVec support = p.support();
        for (std::size_t q = 0; q < kBlock; ++q)
            if (support.get(q))
                throw InvariantError(
                    "switch ancilla derivation produced a row touching the "
                    "data block");
        if (!p.is_hermitian() || p.phase() != 0)
            throw InvariantError(
                "switch ancilla derivation produced a non-positive row");
        if (independent.add(symplectic_row(p))) rows.push_back(p);
    }

    if (rows.size() != kTotal - kBlock)
        throw InvariantError("switch ancilla derivation found " +
                             std::to_string(rows.size()) +
                             " independent rows instead of 8");
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j)
            if (!rows[i].commutes_with(rows[j]))
                throw InvariantError(
                    "switch ancilla derivation produced non-commuting rows");
    return rows;
}

LogicalChannel switch_channel(SwitchDirection direction) {
    LogicalChannel ch;
    ch.circuit = steane_rm_switch_circuit(direction);
    ch.in_offset = 0;
    ch.out_offset = 0;
    if (direction == SwitchDirection::to_reed_muller) {
        ch.code_in = steane();
        ch.code_out = reed_muller15();
        ch.ancilla_rows = switch_ancilla_stabilisers();
        ch.label = "switch-steane-to-rm15";
    } else {
        ch.code_in = reed_muller15();
        ch.code_out = steane();
        ch.label = "switch-rm15-to-steane";
    }
    return ch;
}

} // namespace stabspread
