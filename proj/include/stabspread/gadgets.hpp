#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "stabspread/circuit.hpp"
#include "stabspread/clifford.hpp"
#include "stabspread/code.hpp"
#include "stabspread/dense.hpp"
#include "stabspread/tableau.hpp"

namespace stabspread {

// ---------------------------------------------------------------------------
// Physical building blocks for logical operations on k = 1 CSS blocks.
// All of them append gates to an existing circuit whose register contains the
// block(s) at the given offsets.
// ---------------------------------------------------------------------------

// Qubit-wise CNOT between two equal-sized blocks (control block -> target
// block). For CSS codes this realises the logical CNOT.
void append_transversal_cnot(Circuit& c, std::size_t block_size,
                             std::size_t control_offset, std::size_t target_offset);

// Diagonal logical rotation (Z, S, SDG, T or TDG) on one block: CNOT-fold the
// computational parity of the pure-Z logical representative's support into a
// single qubit, rotate that qubit, and unfold. When `condition` is non-empty
// the rotation itself is classically controlled (Clifford rotations only);
// the fold/unfold stays unconditional since it cancels on its own.
void append_parity_rotation(Circuit& c, const StabiliserCode& code, std::size_t offset,
                            const std::string& rotation, const std::string& condition = "");

// Logical CZ between two blocks of the same code: fold each block's pure-Z
// logical support parity into one qubit, apply a physical CZ between the two
// parity qubits, unfold. Diagonal, so it fixes every Z-type stabiliser; the
// even/odd support-overlap rules give exactly X1 -> X1 Z2 on the logicals.
void append_logical_cz(Circuit& c, const StabiliserCode& code,
                       std::size_t offset1, std::size_t offset2);

// X-basis counterpart of the logical CZ: the phase (-1)^(x1 x2) on the two
// blocks' X-basis logical bits (parities of the pure-X logical support). This
// equals CNOT(2->1) conjugated by logical H on the control block, which is
// the entangling gate the Hadamard teleportation gadget needs.
void append_xx_phase(Circuit& c, const StabiliserCode& code,
                     std::size_t offset1, std::size_t offset2);

// Destructive qubit-wise readout of a block in the given basis. Outcome
// labels are `<prefix><global qubit index + 1>`, e.g. m1..m7 for a 7-qubit
// block at offset 0.
void append_block_readout(Circuit& c, std::size_t block_size, std::size_t offset,
                          char basis, const std::string& label_prefix = "m");

// Decode expression for the logical outcome of a qubit-wise block readout:
// the parity of the outcomes over the logical representative's support,
// XOR-corrected when the same-type check parities flag a single flipped
// readout bit inside that support. Readout-flipping errors are X/Y for a
// Z-basis readout and Y/Z for an X-basis readout; same-type checks (Z checks
// for Z readout, X checks for X readout) are parity checks on the outcome
// bits, so a single flip at qubit q produces the unique pattern of checks
// containing q.
std::string readout_decode_expr(const StabiliserCode& code, char basis,
                                std::size_t offset, const std::string& label_prefix = "m");

// ---------------------------------------------------------------------------
// Logical channels and their verification.
// ---------------------------------------------------------------------------

// A circuit together with the data it needs to be checked as a logical
// operation: which code/block carries the input, which carries the output,
// and full-register stabiliser rows pinning every qubit outside the input
// block at the start (the ancilla preparation).
struct LogicalChannel {
    Circuit circuit;
    StabiliserCode code_in;
    std::size_t in_offset = 0;
    StabiliserCode code_out;
    std::size_t out_offset = 0;
    std::vector<PauliOperator> ancilla_rows;
    // False when the ancilla preparation is not a stabiliser state (magic
    // injection); such channels only admit the dense verifier.
    bool stabiliser_preparation = true;
    std::string label;
};

struct VerifyOptions {
    std::size_t max_branches = 4096;
    // Pauli applied to the full register before the circuit runs.
    std::optional<PauliOperator> injected_error;
    // Accept outputs that are a weight<=1 Pauli away from the expected state:
    // syndrome-correct the output block before checking (the "logical state
    // unchanged" reading used by the error-insertion sweeps).
    bool correct_residual = false;
};

struct BranchFailure {
    std::string input;  // which logical eigenstate was fed in
    std::map<std::string, bool> outcomes;
    std::string reason;
};

struct VerifyReport {
    bool ok = true;
    std::size_t branches_checked = 0;
    std::vector<BranchFailure> failures;
    std::string label;

    nlohmann::json to_json() const;
};

// Checks that every measurement branch of the channel implements `expected`
// (a one-qubit Clifford) on the logical qubit. For each logical eigenstate
// input (+Z, +X, +Y of the input block) it walks all reachable outcome
// branches by re-running the tableau simulation with forced outcomes, and at
// each leaf requires the output block to be stabilised by the output code's
// generators and by the image of the input eigen-operator under `expected`.
// Three independent eigenstates pin a unitary one-qubit action exactly.
VerifyReport verify_logical_action(const LogicalChannel& channel,
                                   const clifford::CliffordMap& expected,
                                   const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// Teleportation-style gadgets.
// ---------------------------------------------------------------------------

// Two-block teleportation gadget for a logical operation u in {I, H, S, T}:
// data block at offset 0, ancilla block (which carries the output) at offset
// n, prepared in U|+bar>. The entangling gate is the transversal CNOT
// (ancilla controls) for diagonal u, and its H-conjugated form for u = H.
// The data block is read out qubit-wise in Z, the logical outcome is decoded
// with single-flip protection, and the conditional correction (U Xbar U^dag)^m
// is applied to the ancilla block (for u = T this is a conditioned logical
// SDG followed by a conditional logical X).
struct TeleportationGadget {
    LogicalChannel channel;
    std::string u;
    char readout_basis = 'Z';
    std::string decode_expr;
    // Ancilla preparation rows local to the ancilla block (code stabilisers
    // plus the signed logical when the preparation is a stabiliser state).
    std::vector<PauliOperator> ancilla_block_rows;
};

TeleportationGadget build_teleportation_gadget(const StabiliserCode& code, const std::string& u);

// X-readout flavour with injected |+bar>: the entangling gate is the logical
// CZ, the data block is read out qubit-wise in X, and the correction is a
// conditional logical X. Implements logical H on any k = 1 CSS code without
// needing a transversal Hadamard.
TeleportationGadget build_coherent_injection(const StabiliserCode& code);

// One-qubit matrix of the teleported operation (column-major [row][col]).
std::array<std::array<std::complex<double>, 2>, 2> logical_u_matrix(const std::string& u);

// Expected logical conjugation map for Clifford u (throws for u = T).
clifford::CliffordMap expected_logical_map(const std::string& u);

// ---------------------------------------------------------------------------
// Dense verification (for non-stabiliser ancilla preparations).
// ---------------------------------------------------------------------------

struct DenseVerifyReport {
    bool ok = true;
    double min_fidelity = 1.0;
    std::size_t branches_checked = 0;
    double tolerance = 1e-9;
    std::string label;

    nlohmann::json to_json() const;
};

// Exact state-vector check of a Z-readout teleportation gadget: for each
// input (alpha, beta) the state alpha|0bar> + beta|1bar> tensored with the
// gadget's U|+bar> ancilla is run through every reachable outcome branch, and
// the final state must match (U applied to the logical input) encoded in the
// output block, tensored with the measured data bits, with fidelity at least
// 1 - tolerance.
DenseVerifyReport verify_teleportation_dense(
    const TeleportationGadget& gadget,
    const std::vector<std::array<std::complex<double>, 2>>& inputs,
    double tolerance = 1e-9);

} // namespace stabspread
