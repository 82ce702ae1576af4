#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stabspread/gf2.hpp"
#include "stabspread/pauli.hpp"

#include <json.hpp>

namespace stabspread {

using pauli::PauliOperator;
using pauli::from_symplectic_row;
using pauli::symplectic_row;

// A stabiliser code on n qubits with k logical qubits, described by a list of
// n-k independent commuting Hermitian stabiliser generators plus one logical
// X/Z representative per logical qubit.
struct StabiliserCode {
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<PauliOperator> stabilisers;
    std::vector<PauliOperator> logical_x;
    std::vector<PauliOperator> logical_z;
    std::string label;

    // Throws InvariantError unless all of the following hold: sizes match
    // (n-k generators, k logical pairs, all on n qubits), every generator is
    // Hermitian and non-identity, generators pairwise commute and are
    // independent, logicals are Hermitian, commute with every generator,
    // satisfy the pairwise (anti)commutation pattern of X̄_i/Z̄_i, and are
    // independent of the stabiliser group.
    void validate() const;

    // True when every stabiliser generator is purely X-type or purely Z-type.
    bool is_css() const;
    std::vector<PauliOperator> x_stabilisers() const; // requires is_css()
    std::vector<PauliOperator> z_stabilisers() const; // requires is_css()

    nlohmann::json to_json() const;
    static StabiliserCode from_json(const nlohmann::json& j);
    static StabiliserCode from_json_text(const std::string& text);
};

// Indexes the stabiliser group of a code for syndrome, membership and
// logical-class queries.
class GroupIndex {
public:
    explicit GroupIndex(StabiliserCode code);

    const StabiliserCode& code() const { return code_; }

    // Bit i is set iff p anticommutes with stabiliser generator i.
    gf2::BitVec syndrome(const PauliOperator& p) const;
    bool in_normaliser(const PauliOperator& p) const;

    // Generator exponents reproducing p's x/z bits, if p is in the group up
    // to phase.
    std::optional<gf2::BitVec> group_combination(const PauliOperator& p) const;
    bool in_group_up_to_phase(const PauliOperator& p) const;
    // True iff p equals a product of generators exactly, including sign.
    bool in_group_exact(const PauliOperator& p) const;

    // Logical action of a normaliser element: xbits[i] set iff p acts as X̄_i
    // (anticommutes with Z̄_i); zbits[i] set iff p acts as Z̄_i.
    struct LogicalClass {
        gf2::BitVec xbits, zbits;
        bool trivial() const { return xbits.none() && zbits.none(); }
        bool operator==(const LogicalClass& o) const {
            return xbits == o.xbits && zbits == o.zbits;
        }
    };
    LogicalClass logical_class(const PauliOperator& p) const;

    // Phase-exact product of logical representatives realising a class.
    PauliOperator class_representative(const LogicalClass& cls) const;

    enum class ResidualKind { trivial, logical, detectable };
    ResidualKind residual_kind(const PauliOperator& p) const;

private:
    StabiliserCode code_;
    gf2::RowBasis stab_basis_;
};

// Compact class name: "I" for the trivial class, otherwise one indexed
// letter per acted-on logical qubit, e.g. "X1", "Z2", "X1Y3".
std::string class_name(const GroupIndex::LogicalClass& cls, std::size_t k);

} // namespace stabspread
