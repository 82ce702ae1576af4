#include "stabspread/layer_split.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stabspread/clifford.hpp"
#include "stabspread/codes.hpp"
#include "stabspread/error.hpp"
#include "stabspread/gf2.hpp"

namespace stabspread {

namespace {

// Re-expresses a layer-code operator on the slab register by placing letter
// q at slab qubit retained[q].
PauliOperator embed_on_retained(const PauliOperator& p, std::size_t slab_n,
                                const std::vector<std::size_t>& retained) {
    PauliOperator out = PauliOperator::identity(slab_n);
    for (std::size_t q = 0; q < p.num_qubits(); ++q)
        out.set_letter(retained[q], p.letter_at(q));
    // set_letter already accounts for the i factor of each Y, so only the
    // difference to the source phase remains.
    out.multiply_phase((4 + p.phase() - out.phase()) & 3);
    return out;
}

gf2::BitVec restrict_to(const gf2::BitVec& sym, std::size_t n,
                        const std::vector<std::size_t>& qubits) {
    gf2::BitVec v(2 * qubits.size());
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        v.set(i, sym.get(qubits[i]));
        v.set(qubits.size() + i, sym.get(n + qubits[i]));
    }
    return v;
}

bool supported_within(const PauliOperator& p,
                      const std::set<std::size_t>& allowed) {
    for (std::size_t q : p.support().ones())
        if (!allowed.count(q)) return false;
    return true;
}

} // namespace

LayerSplit surface_layer_split(std::size_t l) {
    if (l != 2)
        throw PreconditionError(
            "surface_layer_split is implemented for l = 2 only");

    LayerSplit out;
    const SurfaceLattice slab = make_surface_lattice(l, l, 2);
    const SurfaceLattice layer = make_surface_lattice(l, l, 1);
    out.code_3d = slab.code();
    out.code_2d = layer.code();
    const std::size_t n = slab.n();

    // The layer code's qubits are the slab's z = 0 edges, in the layer
    // lattice's own enumeration order.
    for (const auto& e : layer.edges) {
        std::optional<std::size_t> idx;
        if (e.axis == 0) idx = slab.x_edge(e.at[0], e.at[1], 0);
        if (e.axis == 1) idx = slab.y_edge(e.at[0], e.at[1], 0);
        if (!idx)
            throw InvariantError("layer split: z = 0 edge missing from slab");
        out.retained.push_back(*idx);
    }
    std::set<std::size_t> retained_set(out.retained.begin(),
                                       out.retained.end());
    for (std::size_t q = 0; q < n; ++q)
        if (!retained_set.count(q)) out.removed.push_back(q);
    std::set<std::size_t> removed_set(out.removed.begin(), out.removed.end());

    // One CNOT per retained edge onto its z = 1 translate. The lattice must
    // agree that each pair is nearest-neighbour.
    const auto nn = slab.nearest_neighbour_pairs();
    auto is_nn = [&](std::size_t a, std::size_t b) {
        for (const auto& [u, v] : nn)
            if ((u == a && v == b) || (u == b && v == a)) return true;
        return false;
    };
    out.circuit = Circuit(n);
    std::vector<std::pair<std::size_t, std::size_t>> gates;
    for (const auto& e : slab.edges) {
        if (e.at[2] != 0 || e.axis == 2) continue;
        std::optional<std::size_t> lower, upper;
        if (e.axis == 0) {
            lower = slab.x_edge(e.at[0], e.at[1], 0);
            upper = slab.x_edge(e.at[0], e.at[1], 1);
        } else {
            lower = slab.y_edge(e.at[0], e.at[1], 0);
            upper = slab.y_edge(e.at[0], e.at[1], 1);
        }
        if (!lower || !upper)
            throw InvariantError("layer split: missing z = 1 partner edge");
        if (!is_nn(*lower, *upper))
            throw InvariantError(
                "layer split: partner pair is not nearest-neighbour");
        gates.emplace_back(*lower, *upper);
    }
    for (const auto& [c, t] : gates) out.circuit.cnot(c, t);
    out.inverse_circuit = Circuit(n);
    for (auto it = gates.rbegin(); it != gates.rend(); ++it)
        out.inverse_circuit.cnot(it->first, it->second);

    // Certify the split over GF(2): every conjugated slab generator must
    // factor as (combination of embedded layer-code generators) times a
    // residual supported on the removed qubits, with positive sign.
    const clifford::CliffordMap map = out.circuit.to_clifford_map();
    std::vector<PauliOperator> embedded;
    for (const auto& g : out.code_2d.stabilisers)
        embedded.push_back(embed_on_retained(g, n, out.retained));

    gf2::RowBasis on_retained(2 * out.retained.size(), /*track_combos=*/true);
    for (const auto& g : embedded)
        on_retained.add(restrict_to(symplectic_row(g), n, out.retained));

    gf2::RowBasis layer_basis(2 * n);
    for (const auto& g : out.code_3d.stabilisers) {
        PauliOperator image = map.conjugate(g);
        auto combo =
            on_retained.combination_for(restrict_to(symplectic_row(image), n,
                                                    out.retained));
        if (!combo)
            throw InvariantError(
                "layer split: conjugated generator does not match the layer "
                "code on the retained qubits");
        PauliOperator residual = image;
        for (std::size_t i = 0; i < embedded.size(); ++i)
            if (combo->get(i)) residual = residual * embedded[i];
        if (!supported_within(residual, removed_set))
            throw InvariantError(
                "layer split: residual leaks outside the removed qubits");
        if (residual.phase() != 0 || !residual.is_hermitian())
            throw InvariantError(
                "layer split: residual is not a positive Hermitian row");
        if (layer_basis.add(symplectic_row(residual)))
            out.layer_rows.push_back(residual);
    }
    const std::size_t expected_rows =
        out.code_3d.stabilisers.size() - out.code_2d.stabilisers.size();
    if (out.layer_rows.size() != expected_rows)
        throw InvariantError("layer split: disentangled factor has rank " +
                             std::to_string(out.layer_rows.size()) +
                             ", expected " + std::to_string(expected_rows));

    // Both logicals must land exactly on the retained layer's own
    // representatives.
    const bool z_ok =
        map.conjugate(out.code_3d.logical_z.at(0)) ==
        embed_on_retained(out.code_2d.logical_z.at(0), n, out.retained);
    if (!z_ok)
        throw InvariantError(
            "layer split: logical Z does not map to the retained layer's Z");
    const bool x_ok =
        map.conjugate(out.code_3d.logical_x.at(0)) ==
        embed_on_retained(out.code_2d.logical_x.at(0), n, out.retained);
    if (!x_ok)
        throw InvariantError(
            "layer split: logical X does not map to the retained layer's X");
    return out;
}

} // namespace stabspread
