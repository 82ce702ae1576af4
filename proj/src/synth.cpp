#include "stabspread/encode.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

#include "stabspread/error.hpp"

namespace stabspread {

TableauState encoded_tableau(const StabiliserCode& code, const PauliOperator& signed_logical,
                             std::size_t total_qubits, std::size_t offset,
                             const std::vector<PauliOperator>& extra_rows) {
    if (code.k != 1) throw PreconditionError("encoded_tableau: code must have k = 1");
    if (offset + code.n > total_qubits)
        throw PreconditionError("encoded_tableau: block does not fit in the register");
    if (signed_logical.num_qubits() != code.n)
        throw PreconditionError("encoded_tableau: logical row must live on the block");

    std::vector<PauliOperator> rows;
    rows.reserve(total_qubits);
    for (const auto& s : code.stabilisers) rows.push_back(s.embed(total_qubits, offset));
    rows.push_back(signed_logical.embed(total_qubits, offset));
    for (const auto& r : extra_rows) {
        if (r.num_qubits() != total_qubits)
            throw PreconditionError("encoded_tableau: extra rows must span the full register");
        rows.push_back(r);
    }
    // Any qubit not covered by the block or the extra rows defaults to |0>.
    if (rows.size() < total_qubits) {
        gf2::BitVec covered(total_qubits);
        for (std::size_t q = offset; q < offset + code.n; ++q) covered.set(q);
        for (const auto& r : extra_rows)
            for (std::size_t q : r.support().ones()) covered.set(q);
        for (std::size_t q = 0; q < total_qubits && rows.size() < total_qubits; ++q)
            if (!covered.get(q)) rows.push_back(PauliOperator::single(total_qubits, q, 'Z'));
    }
    if (rows.size() != total_qubits)
        throw PreconditionError("encoded_tableau: row count does not determine a pure state");
    return TableauState::from_stabilisers(total_qubits, rows);
}

DenseState encoded_dense(const StabiliserCode& code, std::complex<double> alpha,
                         std::complex<double> beta) {
    if (code.k != 1) throw PreconditionError("encoded_dense: code must have k = 1");
    if (!code.is_css()) throw PreconditionError("encoded_dense: code must be CSS");
    if (code.n > DenseState::kMaxQubits)
        throw PreconditionError("encoded_dense: block exceeds the dense limit");

    auto x_rows = code.x_stabilisers();
    if (code.logical_x[0].z_bits().any() || code.logical_z[0].x_bits().any())
        throw PreconditionError("encoded_dense: logicals must be pure X / pure Z");

    auto mask_of = [](const PauliOperator& p) {
        std::uint64_t m = 0;
        for (std::size_t q : p.x_bits().ones()) m |= std::uint64_t(1) << q;
        return m;
    };
    std::vector<std::uint64_t> gens;
    gens.reserve(x_rows.size());
    for (const auto& r : x_rows) gens.push_back(mask_of(r));
    const std::uint64_t xbar = mask_of(code.logical_x[0]);

    const double mag = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (mag < 1e-12) throw PreconditionError("encoded_dense: zero state");
    const std::complex<double> a = alpha / mag, b = beta / mag;

    std::vector<std::complex<double>> amps(std::size_t(1) << code.n, 0.0);
    const double scale = 1.0 / std::sqrt(double(std::size_t(1) << gens.size()));
    // Gray-code walk over the X-stabiliser row space.
    std::uint64_t word = 0;
    amps[word] += a * scale;
    amps[word ^ xbar] += b * scale;
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << gens.size()); ++i) {
        word ^= gens[std::countr_zero(i)];
        amps[word] += a * scale;
        amps[word ^ xbar] += b * scale;
    }
    return DenseState(code.n, std::move(amps));
}

DenseState block_product_state(std::size_t total_qubits, std::size_t offset,
                               const DenseState& block,
                               const std::map<std::size_t, bool>& fixed_bits) {
    const std::size_t bn = block.num_qubits();
    if (offset + bn > total_qubits)
        throw PreconditionError("block_product_state: block does not fit");
    if (total_qubits > DenseState::kMaxQubits)
        throw PreconditionError("block_product_state: register exceeds the dense limit");
    std::uint64_t fixed_mask = 0, fixed_value = 0;
    for (auto [q, v] : fixed_bits) {
        if (q >= total_qubits) throw PreconditionError("block_product_state: pinned qubit outside register");
        if (q >= offset && q < offset + bn)
            throw PreconditionError("block_product_state: pinned qubit overlaps the block");
        fixed_mask |= std::uint64_t(1) << q;
        fixed_value |= std::uint64_t(v) << q;
    }
    for (std::size_t q = 0; q < total_qubits; ++q) {
        bool in_block = q >= offset && q < offset + bn;
        if (!in_block && !(fixed_mask >> q & 1))
            throw PreconditionError("block_product_state: qubit " + std::to_string(q + 1) +
                                    " is neither in the block nor pinned");
    }

    std::vector<std::complex<double>> amps(std::size_t(1) << total_qubits, 0.0);
    for (std::uint64_t jb = 0; jb < (std::uint64_t(1) << bn); ++jb) {
        auto v = block.amplitudes()[jb];
        if (v == std::complex<double>(0.0)) continue;
        amps[fixed_value | (jb << offset)] = v;
    }
    return DenseState(total_qubits, std::move(amps));
}

} // namespace stabspread
