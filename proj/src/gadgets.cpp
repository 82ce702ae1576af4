#include "stabspread/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stabspread/encode.hpp"
#include "stabspread/error.hpp"

namespace stabspread {

namespace {

using clifford::CliffordMap;

std::vector<std::size_t> bit_indices(const gf2::BitVec& v) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) out.push_back(i);
    return out;
}

// Support of the pure-Z (resp. pure-X) logical representative of a k = 1
// CSS code; the parity constructions need one-type representatives.
std::vector<std::size_t> pure_rep_support(const StabiliserCode& code, char type) {
    if (code.k != 1)
        throw PreconditionError("logical block operations need a k = 1 code");
    if (!code.is_css())
        throw PreconditionError("logical block operations need a CSS code (no transversal CNOT otherwise)");
    const PauliOperator& rep = (type == 'Z') ? code.logical_z[0] : code.logical_x[0];
    const bool pure = (type == 'Z') ? rep.x_bits().none() : rep.z_bits().none();
    if (!pure || rep.phase() != 0)
        throw PreconditionError(std::string("logical ") + type +
                                " representative must be a positive pure-" + type + " operator");
    return bit_indices(rep.support());
}

void check_block(const Circuit& c, std::size_t block, std::size_t offset, const char* what) {
    if (offset + block > c.n)
        throw PreconditionError(std::string(what) + ": block does not fit in the register");
}

PauliOperator signed_logical(const StabiliserCode& code, char letter) {
    switch (letter) {
        case 'X': return code.logical_x[0];
        case 'Z': return code.logical_z[0];
        case 'Y': {
            // Y = i X Z carried to the logical level.
            PauliOperator y = code.logical_x[0] * code.logical_z[0];
            y.multiply_phase(1);
            return y;
        }
        default: throw PreconditionError("logical letter must be X, Y or Z");
    }
}

// Logical counterpart of a signed one-qubit Pauli i^p X^a Z^b: the map
// X -> Xbar, Z -> Zbar extends to a homomorphism on signed Paulis because the
// representatives obey the same algebra (Hermitian, squaring to +1,
// anticommuting), so the image is i^p Xbar^a Zbar^b with exact phase.
PauliOperator logical_counterpart(const StabiliserCode& code, const PauliOperator& one_qubit) {
    const bool a = one_qubit.x_bits().get(0);
    const bool b = one_qubit.z_bits().get(0);
    PauliOperator out = PauliOperator::identity(code.n);
    if (a) out = out * code.logical_x[0];
    if (b) out = out * code.logical_z[0];
    out.multiply_phase(one_qubit.phase());
    return out;
}

void append_rotation_gate(Circuit& c, std::size_t q, const std::string& rotation,
                          const std::string& condition) {
    if (condition.empty()) {
        if (rotation == "Z") c.z(q);
        else if (rotation == "S") c.s(q);
        else if (rotation == "SDG") c.sdg(q);
        else if (rotation == "T") c.t(q);
        else if (rotation == "TDG") c.tdg(q);
        else throw PreconditionError("unsupported rotation: " + rotation);
    } else {
        if (rotation == "T" || rotation == "TDG")
            throw PreconditionError("conditioned non-Clifford rotations are not representable");
        if (rotation != "Z" && rotation != "S" && rotation != "SDG")
            throw PreconditionError("unsupported rotation: " + rotation);
        c.cgate(condition, rotation, {q});
    }
}

std::string xor_expr(const std::vector<std::size_t>& qubits, std::size_t offset,
                     const std::string& prefix) {
    std::string out;
    for (std::size_t q : qubits) {
        if (!out.empty()) out += "^";
        out += prefix + std::to_string(offset + q + 1);
    }
    return out;
}

} // namespace

void append_transversal_cnot(Circuit& c, std::size_t block_size,
                             std::size_t control_offset, std::size_t target_offset) {
    check_block(c, block_size, control_offset, "transversal CNOT");
    check_block(c, block_size, target_offset, "transversal CNOT");
    for (std::size_t i = 0; i < block_size; ++i)
        c.cnot(control_offset + i, target_offset + i);
}

void append_parity_rotation(Circuit& c, const StabiliserCode& code, std::size_t offset,
                            const std::string& rotation, const std::string& condition) {
    const auto supp = pure_rep_support(code, 'Z');
    check_block(c, code.n, offset, "parity rotation");
    const std::size_t hub = supp.back();
    for (std::size_t i = 0; i + 1 < supp.size(); ++i)
        c.cnot(offset + supp[i], offset + hub);
    append_rotation_gate(c, offset + hub, rotation, condition);
    for (std::size_t i = supp.size() - 1; i-- > 0;)
        c.cnot(offset + supp[i], offset + hub);
}

void append_logical_cz(Circuit& c, const StabiliserCode& code,
                       std::size_t offset1, std::size_t offset2) {
    const auto supp = pure_rep_support(code, 'Z');
    check_block(c, code.n, offset1, "logical CZ");
    check_block(c, code.n, offset2, "logical CZ");
    if (offset1 == offset2) throw PreconditionError("logical CZ needs two distinct blocks");
    const std::size_t hub = supp.back();
    for (std::size_t off : {offset1, offset2})
        for (std::size_t i = 0; i + 1 < supp.size(); ++i)
            c.cnot(off + supp[i], off + hub);
    c.cz(offset1 + hub, offset2 + hub);
    for (std::size_t off : {offset2, offset1})
        for (std::size_t i = supp.size() - 1; i-- > 0;)
            c.cnot(off + supp[i], off + hub);
}

void append_xx_phase(Circuit& c, const StabiliserCode& code,
                     std::size_t offset1, std::size_t offset2) {
    const auto supp = pure_rep_support(code, 'X');
    check_block(c, code.n, offset1, "XX phase");
    check_block(c, code.n, offset2, "XX phase");
    if (offset1 == offset2) throw PreconditionError("XX phase needs two distinct blocks");
    const std::size_t hub = supp.back();
    // A CNOT maps X-basis labels x_control <- x_control xor x_target, so the
    // hub accumulates the block's X-basis support parity as the control.
    for (std::size_t off : {offset1, offset2})
        for (std::size_t i = 0; i + 1 < supp.size(); ++i)
            c.cnot(off + hub, off + supp[i]);
    c.h(offset1 + hub).h(offset2 + hub);
    c.cz(offset1 + hub, offset2 + hub);
    c.h(offset1 + hub).h(offset2 + hub);
    for (std::size_t off : {offset2, offset1})
        for (std::size_t i = supp.size() - 1; i-- > 0;)
            c.cnot(off + hub, off + supp[i]);
}

void append_block_readout(Circuit& c, std::size_t block_size, std::size_t offset,
                          char basis, const std::string& label_prefix) {
    check_block(c, block_size, offset, "block readout");
    for (std::size_t i = 0; i < block_size; ++i)
        c.measure(basis, offset + i, label_prefix + std::to_string(offset + i + 1));
}

std::string readout_decode_expr(const StabiliserCode& code, char basis,
                                std::size_t offset, const std::string& label_prefix) {
    if (basis != 'X' && basis != 'Z')
        throw PreconditionError("readout basis must be X or Z");
    const auto rep = pure_rep_support(code, basis);
    const auto checks = (basis == 'Z') ? code.z_stabilisers() : code.x_stabilisers();

    std::vector<std::vector<std::size_t>> check_supports;
    check_supports.reserve(checks.size());
    for (const auto& s : checks) check_supports.push_back(bit_indices(s.support()));

    std::string expr = xor_expr(rep, offset, label_prefix);

    // Single-flip protection: a flipped readout bit at qubit q flips exactly
    // the check parities whose support contains q; if that pattern points at
    // a qubit inside the representative's support, the parity is corrected.
    std::vector<std::string> minterms;
    for (std::size_t q : rep) {
        bool covered = false;
        std::string minterm;
        for (const auto& cs : check_supports) {
            const bool inside = std::find(cs.begin(), cs.end(), q) != cs.end();
            covered = covered || inside;
            std::string parity = "(" + xor_expr(cs, offset, label_prefix) + ")";
            if (!minterm.empty()) minterm += "&";
            minterm += inside ? parity : ("!" + parity);
        }
        if (covered) minterms.push_back("(" + minterm + ")");
    }
    if (!minterms.empty()) {
        std::string correction;
        for (const auto& m : minterms) {
            if (!correction.empty()) correction += "|";
            correction += m;
        }
        expr = "(" + expr + ")^(" + correction + ")";
    }
    return expr;
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json j;
    j["ok"] = ok;
    j["branches_checked"] = branches_checked;
    j["label"] = label;
    j["failures"] = nlohmann::json::array();
    for (const auto& f : failures) {
        nlohmann::json jf;
        jf["input"] = f.input;
        jf["reason"] = f.reason;
        jf["outcomes"] = f.outcomes;
        j["failures"].push_back(jf);
    }
    return j;
}

namespace {

// First measured label whose outcome was a coin flip not pinned by `forced`.
std::optional<std::string> first_free_coin(const TableauRecord& rec,
                                           const std::map<std::string, bool>& forced) {
    for (const auto& label : rec.measured_order)
        if (!rec.deterministic.at(label) && !forced.count(label)) return label;
    return std::nullopt;
}

// Finds a weight <= 1 Pauli on the output block matching the pattern of
// negated stabiliser expectations and applies it. Returns false when the
// output is not a weight <= 1 deformation of the output codespace.
bool correct_single_residual(TableauState& st,
                             const std::vector<PauliOperator>& gens_embedded,
                             const StabiliserCode& code_out, std::size_t out_offset,
                             std::size_t total, std::string& why) {
    std::vector<bool> bad(gens_embedded.size());
    bool any_bad = false;
    for (std::size_t i = 0; i < gens_embedded.size(); ++i) {
        const int e = st.expectation(gens_embedded[i]);
        if (e == 0) {
            why = "output block stabiliser has indefinite value";
            return false;
        }
        bad[i] = (e < 0);
        any_bad = any_bad || bad[i];
    }
    if (!any_bad) return true;
    for (std::size_t q = 0; q < code_out.n; ++q) {
        for (char letter : {'X', 'Y', 'Z'}) {
            const PauliOperator e = PauliOperator::single(total, out_offset + q, letter);
            bool match = true;
            for (std::size_t i = 0; i < gens_embedded.size() && match; ++i)
                match = (bad[i] == !e.commutes_with(gens_embedded[i]));
            if (match) {
                st.apply_pauli(e);
                return true;
            }
        }
    }
    why = "no single-qubit correction matches the output syndrome";
    return false;
}

} // namespace

VerifyReport verify_logical_action(const LogicalChannel& channel,
                                   const clifford::CliffordMap& expected,
                                   const VerifyOptions& opts) {
    if (expected.num_qubits() != 1)
        throw PreconditionError("expected logical action must be a one-qubit map");
    if (!channel.stabiliser_preparation)
        throw PreconditionError("ancilla preparation is not a stabiliser state; use the dense verifier");
    channel.circuit.validate();
    if (channel.circuit.has_t())
        throw PreconditionError("channel contains a T gate; use the dense verifier");
    const std::size_t total = channel.circuit.n;
    if (channel.in_offset + channel.code_in.n > total ||
        channel.out_offset + channel.code_out.n > total)
        throw PreconditionError("code blocks do not fit in the circuit register");
    if (opts.injected_error && opts.injected_error->num_qubits() != total)
        throw PreconditionError("injected error must act on the full register");

    VerifyReport report;
    report.label = channel.label;

    std::vector<PauliOperator> out_gens;
    for (const auto& g : channel.code_out.stabilisers)
        out_gens.push_back(g.embed(total, channel.out_offset));

    for (char letter : {'Z', 'X', 'Y'}) {
        const std::string input_name = std::string(1, letter) + "-eigenstate";
        const PauliOperator in_logical = signed_logical(channel.code_in, letter);
        const PauliOperator image_1q =
            expected.conjugate(PauliOperator::single(1, 0, letter));
        PauliOperator out_logical =
            logical_counterpart(channel.code_out, image_1q).embed(total, channel.out_offset);

        TableauState start =
            encoded_tableau(channel.code_in, in_logical, total, channel.in_offset,
                            channel.ancilla_rows);
        if (opts.injected_error) start.apply_pauli(*opts.injected_error);

        std::vector<std::map<std::string, bool>> stack{{}};
        while (!stack.empty()) {
            if (report.branches_checked >= opts.max_branches) {
                report.ok = false;
                report.failures.push_back({input_name, {}, "branch budget exceeded"});
                return report;
            }
            auto forced = std::move(stack.back());
            stack.pop_back();

            TableauRunOptions ropts;
            ropts.seed = 0x5eed;
            ropts.forced = forced;
            ropts.initial = start;
            TableauRecord rec = simulate_tableau(channel.circuit, ropts);

            if (auto coin = first_free_coin(rec, forced)) {
                auto zero = forced, one = forced;
                zero[*coin] = false;
                one[*coin] = true;
                stack.push_back(std::move(zero));
                stack.push_back(std::move(one));
                continue;
            }

            ++report.branches_checked;
            auto fail = [&](const std::string& reason) {
                report.ok = false;
                report.failures.push_back({input_name, rec.outcomes, reason});
            };

            TableauState st = rec.state;
            if (opts.correct_residual) {
                std::string why;
                if (!correct_single_residual(st, out_gens, channel.code_out,
                                             channel.out_offset, total, why)) {
                    fail(why);
                    continue;
                }
            }
            bool gens_ok = true;
            for (std::size_t i = 0; i < out_gens.size() && gens_ok; ++i) {
                if (st.expectation(out_gens[i]) != 1) {
                    fail("output block is not stabilised by output-code generator #" +
                         std::to_string(i + 1));
                    gens_ok = false;
                }
            }
            if (!gens_ok) continue;
            if (st.expectation(out_logical) != 1)
                fail("output logical state is not the expected image of the " + input_name);
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Gadget builders.
// ---------------------------------------------------------------------------

std::array<std::array<std::complex<double>, 2>, 2> logical_u_matrix(const std::string& u) {
    using namespace std::complex_literals;
    const double r = 1.0 / std::numbers::sqrt2;
    if (u == "I") return {{{1.0, 0.0}, {0.0, 1.0}}};
    if (u == "H") return {{{r, r}, {r, -r}}};
    if (u == "S") return {{{1.0, 0.0}, {0.0, 1i}}};
    if (u == "T") return {{{1.0, 0.0}, {0.0, std::polar(1.0, std::numbers::pi / 4)}}};
    throw PreconditionError("unsupported logical operation: " + u);
}

clifford::CliffordMap expected_logical_map(const std::string& u) {
    if (u == "I") return CliffordMap::identity(1);
    if (u == "H") return CliffordMap::hadamard(1, 0);
    if (u == "S") return CliffordMap::phase_s(1, 0);
    throw PreconditionError("logical action of " + u + " is not a Clifford map");
}

TeleportationGadget build_teleportation_gadget(const StabiliserCode& code, const std::string& u) {
    code.validate();
    if (u != "I" && u != "H" && u != "S" && u != "T")
        throw PreconditionError("teleportation gadget supports u in {I, H, S, T}; "
                                "no conjugated entangling gate is available for u = " + u);
    // Validates k = 1, CSS and pure representatives up front.
    pure_rep_support(code, 'Z');
    pure_rep_support(code, 'X');

    const std::size_t n = code.n;
    const std::size_t anc = n;
    TeleportationGadget g;
    g.u = u;
    g.readout_basis = 'Z';

    Circuit c(2 * n);
    if (u == "H")
        append_xx_phase(c, code, 0, anc);
    else
        append_transversal_cnot(c, n, anc, 0);
    append_block_readout(c, n, 0, 'Z');
    g.decode_expr = readout_decode_expr(code, 'Z', 0);

    // Branch with outcome 1 holds (U Xbar U^dag) applied to the ideal output;
    // that conjugate is an involution, so applying it again corrects.
    if (u == "I") {
        c.cpauli(g.decode_expr, code.logical_x[0].embed(2 * n, anc));
    } else if (u == "H") {
        c.cpauli(g.decode_expr, code.logical_z[0].embed(2 * n, anc));
    } else if (u == "S") {
        c.cpauli(g.decode_expr, signed_logical(code, 'Y').embed(2 * n, anc));
    } else { // T: T X T^dag = e^{i pi/4} X S^dag, applied right factor first.
        append_parity_rotation(c, code, anc, "SDG", g.decode_expr);
        c.cpauli(g.decode_expr, code.logical_x[0].embed(2 * n, anc));
    }
    c.validate();

    g.ancilla_block_rows = code.stabilisers;
    bool stabiliser_prep = true;
    if (u == "I") g.ancilla_block_rows.push_back(signed_logical(code, 'X'));
    else if (u == "H") g.ancilla_block_rows.push_back(signed_logical(code, 'Z'));
    else if (u == "S") g.ancilla_block_rows.push_back(signed_logical(code, 'Y'));
    else stabiliser_prep = false; // T|+bar> is not a stabiliser state

    g.channel.circuit = std::move(c);
    g.channel.code_in = code;
    g.channel.in_offset = 0;
    g.channel.code_out = code;
    g.channel.out_offset = anc;
    g.channel.stabiliser_preparation = stabiliser_prep;
    g.channel.label = "teleport-" + u + "-" + code.label;
    for (const auto& row : g.ancilla_block_rows)
        g.channel.ancilla_rows.push_back(row.embed(2 * n, anc));
    return g;
}

TeleportationGadget build_coherent_injection(const StabiliserCode& code) {
    code.validate();
    pure_rep_support(code, 'Z');
    pure_rep_support(code, 'X');

    const std::size_t n = code.n;
    const std::size_t anc = n;
    TeleportationGadget g;
    g.u = "H";
    g.readout_basis = 'X';

    Circuit c(2 * n);
    append_logical_cz(c, code, 0, anc);
    append_block_readout(c, n, 0, 'X');
    g.decode_expr = readout_decode_expr(code, 'X', 0);
    c.cpauli(g.decode_expr, code.logical_x[0].embed(2 * n, anc));
    c.validate();

    g.ancilla_block_rows = code.stabilisers;
    g.ancilla_block_rows.push_back(signed_logical(code, 'X'));

    g.channel.circuit = std::move(c);
    g.channel.code_in = code;
    g.channel.in_offset = 0;
    g.channel.code_out = code;
    g.channel.out_offset = anc;
    g.channel.stabiliser_preparation = true;
    g.channel.label = "coherent-injection-" + code.label;
    for (const auto& row : g.ancilla_block_rows)
        g.channel.ancilla_rows.push_back(row.embed(2 * n, anc));
    return g;
}

// ---------------------------------------------------------------------------
// Dense verification.
// ---------------------------------------------------------------------------

nlohmann::json DenseVerifyReport::to_json() const {
    nlohmann::json j;
    j["ok"] = ok;
    j["min_fidelity"] = min_fidelity;
    j["branches_checked"] = branches_checked;
    j["tolerance"] = tolerance;
    j["label"] = label;
    return j;
}

namespace {

DenseState two_block_state(std::size_t total, std::size_t off1, const DenseState& b1,
                           std::size_t off2, const DenseState& b2) {
    const std::size_t n1 = b1.num_qubits(), n2 = b2.num_qubits();
    std::vector<std::complex<double>> amps(std::size_t{1} << total, 0.0);
    for (std::size_t v1 = 0; v1 < (std::size_t{1} << n1); ++v1) {
        const auto a1 = b1.amplitudes()[v1];
        if (a1 == std::complex<double>{}) continue;
        for (std::size_t v2 = 0; v2 < (std::size_t{1} << n2); ++v2) {
            const auto a2 = b2.amplitudes()[v2];
            if (a2 == std::complex<double>{}) continue;
            amps[(v1 << off1) | (v2 << off2)] = a1 * a2;
        }
    }
    return DenseState(total, std::move(amps));
}

std::optional<std::string> first_free_coin_dense(const DenseRecord& rec,
                                                 const std::map<std::string, bool>& forced) {
    for (const auto& label : rec.measured_order)
        if (!rec.deterministic.at(label) && !forced.count(label)) return label;
    return std::nullopt;
}

} // namespace

DenseVerifyReport verify_teleportation_dense(
    const TeleportationGadget& gadget,
    const std::vector<std::array<std::complex<double>, 2>>& inputs,
    double tolerance) {
    const auto& ch = gadget.channel;
    const std::size_t total = ch.circuit.n;
    if (total > DenseState::kMaxQubits)
        throw PreconditionError("register too large for the dense verifier");
    if (gadget.readout_basis != 'Z')
        throw PreconditionError("dense verifier expects a Z-basis data readout");
    if (inputs.empty()) throw PreconditionError("need at least one logical input");

    const auto um = logical_u_matrix(gadget.u);
    // Ancilla preparation U|+bar>: logical amplitudes U (1,1)/sqrt(2).
    const double r = 1.0 / std::numbers::sqrt2;
    const DenseState anc_block = encoded_dense(
        ch.code_out, (um[0][0] + um[0][1]) * r, (um[1][0] + um[1][1]) * r);

    DenseVerifyReport report;
    report.tolerance = tolerance;
    report.label = ch.label;

    for (const auto& in : inputs) {
        const double norm = std::sqrt(std::norm(in[0]) + std::norm(in[1]));
        if (std::abs(norm - 1.0) > 1e-9)
            throw PreconditionError("logical inputs must be unit vectors");
        const DenseState in_block = encoded_dense(ch.code_in, in[0], in[1]);
        const DenseState start =
            two_block_state(total, ch.in_offset, in_block, ch.out_offset, anc_block);
        const std::complex<double> out0 = um[0][0] * in[0] + um[0][1] * in[1];
        const std::complex<double> out1 = um[1][0] * in[0] + um[1][1] * in[1];
        const DenseState expected_block = encoded_dense(ch.code_out, out0, out1);

        std::vector<std::map<std::string, bool>> stack{{}};
        while (!stack.empty()) {
            auto forced = std::move(stack.back());
            stack.pop_back();

            DenseRunOptions ropts;
            ropts.seed = 0x5eed;
            ropts.forced = forced;
            ropts.initial = start;
            DenseRecord rec = simulate_dense(ch.circuit, ropts);

            if (auto coin = first_free_coin_dense(rec, forced)) {
                auto zero = forced, one = forced;
                zero[*coin] = false;
                one[*coin] = true;
                stack.push_back(std::move(zero));
                stack.push_back(std::move(one));
                continue;
            }

            ++report.branches_checked;
            std::map<std::size_t, bool> data_bits;
            for (std::size_t q = 0; q < ch.code_in.n; ++q) {
                const std::string label = "m" + std::to_string(ch.in_offset + q + 1);
                data_bits[ch.in_offset + q] = rec.outcomes.at(label);
            }
            const DenseState expected =
                block_product_state(total, ch.out_offset, expected_block, data_bits);
            const double f = rec.state.fidelity_with(expected);
            report.min_fidelity = std::min(report.min_fidelity, f);
            if (f < 1.0 - tolerance) report.ok = false;
        }
    }
    return report;
}

} // namespace stabspread
