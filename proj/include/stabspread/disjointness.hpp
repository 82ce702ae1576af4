#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stabspread/analysis.hpp"
#include "stabspread/code.hpp"
#include "stabspread/family.hpp"

#include <json.hpp>

namespace stabspread {

// Reduced non-negative fraction used for disjointness bounds.
struct Rational {
    std::size_t num = 0;
    std::size_t den = 1;

    Rational() = default;
    Rational(std::size_t n, std::size_t d); // reduces; d == 0 raises PreconditionError

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const; // "7/3"; integral values render plain ("2")

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const;

    nlohmann::json to_json() const;
};

Rational operator*(const Rational& a, const Rational& b);

// A family of representatives of one logical class in which no qubit lies in
// the support of more than `c` members.
struct WitnessSet {
    std::string cls;    // class name, e.g. "X1", "Y1", "X1Z2"
    std::size_t c = 1;  // multiplicity cap the family is claimed to satisfy
    std::vector<PauliOperator> members;

    nlohmann::json to_json() const; // members rendered as Pauli strings
};

// Re-checks a witness set from scratch: every member must be Hermitian, lie in
// the code's normaliser, and realise exactly the named logical class; members
// must be pairwise distinct; and no qubit may appear in more than set.c member
// supports.  Throws InvariantError on any failure.  Every search result and
// every composite construction in this module passes through this gate, and it
// is deliberately independent of the search code so it can catch search bugs.
void verify_witness_set(const StabiliserCode& code, const WitnessSet& set);

// Search limits.  A record is exact only when the full representative coset is
// enumerable (n - k <= coset_exponent_cap) and the branch-and-bound completed
// within max_nodes; otherwise the result is a flagged lower bound.
struct SearchBudget {
    std::size_t coset_exponent_cap = 20;
    std::size_t max_nodes = 2'000'000;
};

// Largest found family of representatives of one class with per-qubit
// multiplicity <= c, with the witnesses that achieve it.
struct CDisjointnessRecord {
    std::size_t c = 1;
    std::size_t count = 0; // number of members found (the unnormalised record)
    Rational normalised;   // count / c
    bool exact = false;    // search provably found the maximum
    WitnessSet witnesses;

    nlohmann::json to_json() const;
};

// Maximum number of pairwise support-disjoint representatives of the logical
// class of `logical` (the c = 1 record).  Preconditions: `logical` is in the
// normaliser and outside the stabiliser group (a non-trivial logical class);
// PreconditionError otherwise.  Exact when the coset is enumerable within the
// budget, else a flagged best-found lower bound.
CDisjointnessRecord one_disjointness(const StabiliserCode& code, const PauliOperator& logical,
                                     const SearchBudget& budget = {});

// Largest found family with per-qubit multiplicity <= c.  pre: c >= 1 and
// `logical` as in one_disjointness.  c = 1 reproduces one_disjointness.
CDisjointnessRecord c_disjointness_record(const StabiliserCode& code,
                                          const PauliOperator& logical, std::size_t c,
                                          const SearchBudget& budget = {});

// n/d upper bound on the disjointness: every member of a c-disjoint family has
// weight >= d, and total support incidence is at most c*n, so count/c <= n/d.
// The overload computing the distance itself uses the proven lower bound on d,
// which can only enlarge (never invalidate) the upper bound.
Rational delta_upper_bound(const StabiliserCode& code);
Rational delta_upper_bound(std::size_t n, std::size_t distance);

struct DisjointnessOptions {
    std::vector<std::size_t> cs = {1, 2, 4, 8};
    SearchBudget budget;
    // Class names to analyse; empty means all 4^k - 1 non-trivial classes when
    // k <= 2 and the 3k single-logical classes otherwise.
    std::vector<std::string> classes;
    // Skips the internal distance computation for the upper bound if set.
    std::optional<std::size_t> known_distance;
};

// Interval report: per-class records plus the code-level bounds
//   delta_lower = max over searched c of (min over classes of count/c)
//   delta_upper = n/d.
// The disjointness itself is only ever reported as this interval.
struct DisjointnessReport {
    std::string code_label;

    struct PerLogical {
        std::string cls;
        std::size_t delta1 = 0; // count at c = 1 (exact or lower bound)
        bool delta1_exact = false;
        std::vector<CDisjointnessRecord> records; // one per searched c
    };
    std::vector<PerLogical> per_logical;

    Rational delta_lower;
    std::size_t delta_lower_c = 1; // the c achieving delta_lower
    Rational delta_upper;
    bool exact = true; // every record exact

    nlohmann::json to_json() const;
};

// Assembles the per-class records, verifies every witness set, checks the
// overlap-counting inequalities across anticommuting class pairs, and enforces
// delta_lower <= delta_upper (InvariantError on violation: that inequality is
// a theorem, so a violation is a search or construction bug).
DisjointnessReport disjointness_report(const StabiliserCode& code,
                                       const DisjointnessOptions& opts = {});

// Product lower bound for the code concatenate(outer, inner): for each outer
// class, every outer witness has each non-trivial letter replaced by an inner
// witness of that letter's class, giving count_outer * count_inner composite
// representatives in which each qubit appears at most c_outer * c_inner times.
// The returned bound is outer.delta_lower * inner.delta_lower.
//
// Preconditions: both reports have delta_lower > 1 (PreconditionError — a
// delta of 1 certifies nothing) and the inner report covers classes X1, Y1,
// Z1 at the c achieving its delta_lower.  Every composite family is re-checked
// with verify_witness_set against the concatenated code; failures surface as
// InvariantError (certification failure).  The codes are taken alongside the
// reports because certification needs the actual groups, not just the labels.
struct ConcatDisjointness {
    Rational bound;
    std::size_t c = 1; // product of the two achieving multiplicity caps
    std::vector<WitnessSet> witnesses; // one composite family per outer class

    nlohmann::json to_json() const;
};
ConcatDisjointness concat_delta_lower(const StabiliserCode& outer,
                                      const DisjointnessReport& outer_report,
                                      const StabiliserCode& inner,
                                      const DisjointnessReport& inner_report);

// l translated straight loops representing one toric logical class, pairwise
// disjoint, verified against toric(l).  cls must be one of "X1", "X2", "Z1",
// "Z2" (the classes whose representatives are single straight loops; Y-type
// classes need composite families and are covered by the generic search and
// the divergence builder).  pre: l >= 2.
WitnessSet toric_parallel_loops(std::size_t l, const std::string& cls);

// l pairwise-disjoint representatives of X1 (axis = 'X': the lx parallel
// sheets of x-edges at fixed x-offset) or Z1 (axis = 'Z': x-directed columns
// at distinct (y, z)) on the cubic code surface3d(l, l, l), verified.
WitnessSet surface3d_axis_family(std::size_t l, char axis);

// l representatives of Y1 on surface3d(l, l, l), each the product of a sheet
// and a column crossing it, chosen so that no qubit lies in more than two
// members: sheets are pairwise disjoint and columns are pairwise disjoint, so
// a qubit can be hit by at most one sheet and one column.  pre: l in {2, 3}
// (desk scale).  Certifies an unnormalised c=2 record of size l, i.e. a
// disjointness lower bound of l/2.
WitnessSet surface3d_y_family(std::size_t l);

// Overlap-counting consistency checks relating witness families to the
// weights of operators they must intersect.
//
// overlap_capacity_bound: for any operator u and any verified c-family {P_i},
//   sum_i |supp(P_i) ∩ supp(u)| <= c * wt(u)
// (each qubit of u is hit by at most c members).
//
// anticommuting_weight_bound: if u is a normaliser element whose logical
// class anticommutes with the family's class, every member must intersect
// supp(u), so additionally count <= c * wt(u), i.e. count/c <= wt(u).
//
// Both return true when the inequality holds (they are theorems for verified
// inputs; disjointness_report checks them across all anticommuting class
// pairs it produced).
bool overlap_capacity_bound(const WitnessSet& set, const PauliOperator& u);
bool anticommuting_weight_bound(const GroupIndex& gi, const WitnessSet& set,
                                const PauliOperator& u);

// Disjointness lower-bound trend across family sizes, as evidence for the
// symmetric classification branch.  Sources by family kind:
//   toric / surface2d / surface3d — constructive translated families (loops,
//     sheets, columns, and their products) verified per size, giving a c=2
//     record of size l for every class, i.e. values l/2;
//   steane_concat / rm_concat / alternating_concat — the concatenation product
//     recursion seeded by an exact search on the base code, with composite
//     witnesses re-verified at every size in the list.
// diverging is set when the values are strictly increasing.
DivergenceEvidence disjointness_divergence(const CodeFamily& family,
                                           const std::vector<std::size_t>& sizes);

} // namespace stabspread
