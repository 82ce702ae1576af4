#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stabspread/code.hpp"
#include "stabspread/family.hpp"

namespace stabspread {

// Tolerances used by the family classification ratio rule.  A logical class is
// judged "low weight" for the family when its per-size distance-to-code-distance
// ratios are non-increasing up to kRatioSlack and the final ratio is at most
// kRatioCap; it is judged divergent (sound, via lower bounds) when the final
// lower-bound ratio exceeds kRatioCap.
inline constexpr double kRatioSlack = 1.10;
inline constexpr double kRatioCap = 2.0;
inline constexpr double kRatioEps = 1e-9;

// Caps for the exact enumeration strategies and the bounded fallback search.
inline constexpr std::size_t kExhaustiveMaxRank = 24;  // full coset scan, 2^r products
inline constexpr std::size_t kTypedMaxRank = 25;       // CSS single-type scan
inline constexpr std::size_t kMinimiserCap = 1 << 16;  // recorded argmin sets
inline constexpr std::size_t kSearchWeightCap = 4;     // weight-bounded fallback
inline constexpr std::size_t kSearchBudget = 2'000'000;

struct WitnessResult {
    std::size_t weight = 0;      // best known representative weight (upper bound)
    PauliOperator witness;       // representative achieving `weight`, phase +
    std::size_t lower_bound = 0; // proven lower bound on the class distance
    bool exact = false;          // lower_bound == weight
    std::string method;          // strategy that produced the tight bounds
};

struct ClassDistance {
    std::string label;           // e.g. "X1", "Z1", "Y1", "X1Z2"
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool exact = false;
    PauliOperator witness;
    std::string method;
};

struct DistanceReport {
    std::string code_label;
    std::map<std::string, ClassDistance> per_logical;
    std::size_t code_distance = 0;       // min over classes of best upper bound
    std::size_t code_distance_lower = 0; // min over classes of proven lower bound
    bool exact = false;                  // every reported class is exact
    std::string method;                  // summary of strategies used
    bool restricted_to_singles = false;  // k > 2: only single-qubit classes listed
    std::string notes;

    nlohmann::json to_json() const;
};

// Minimum weight over the logical class of `logical`.
//
// Preconditions: `logical` commutes with every stabiliser and is not in the
// stabiliser group (up to phase); violations raise PreconditionError.  If no
// exact strategy fits and the bounded search exhausts its budget, the result
// has exact = false and carries the proven lower bound; the witness is still a
// genuine representative.
WitnessResult logical_distance(const StabiliserCode& code, const PauliOperator& logical,
                               const DistanceHints& hints = {});

// Per-class distance table.  For k <= 2 all 4^k - 1 non-trivial classes are
// reported; for larger k only the 3k single-qubit classes are, and the report
// is flagged.  Pauli logicals only: non-Pauli (non-stabiliser) logical
// operations are outside this analysis and noted in the report.
DistanceReport code_distance(const StabiliserCode& code, const DistanceHints& hints = {});

// Distance report for family member l, using the family's structural hints
// (disjoint partner certificates, witnesses, concatenation recursion).
DistanceReport family_distance_report(const CodeFamily& family, std::size_t l);

// Trend of disjointness lower bounds across family sizes, used as evidence for
// the symmetric branch of the classification verdict.
struct DivergenceEvidence {
    std::vector<double> values; // one per sampled size, lower bounds
    bool diverging = false;
    std::string source;
};

struct FamilyClassification {
    std::string family;
    std::vector<std::size_t> sampled_sizes;
    std::vector<DistanceReport> distance_table; // parallel to sampled_sizes

    // Classes judged low-weight for the family (ratio rule on upper bounds).
    std::vector<std::string> p_down_generators;
    bool symmetric = false; // p_down classes span the full logical Pauli group

    enum class Verdict { asymmetric_rule, symmetric_infinite_disjointness_rule, inconclusive };
    Verdict verdict = Verdict::inconclusive;

    struct RatioEvidence {
        std::string cls;
        std::vector<double> upper_ratios; // per size: upper_d / code_distance
        std::vector<double> lower_ratios; // per size: lower_d / code_distance
        std::vector<bool> exact;          // per size
        std::string judgement;            // in_p_down | excluded | inconclusive
    };
    std::vector<RatioEvidence> evidence;
    std::optional<DivergenceEvidence> disjointness;
    std::string notes; // includes the finite-sample disclaimer

    nlohmann::json to_json() const;
};

// Classifies a family from >= 3 sampled sizes (PreconditionError otherwise:
// insufficient evidence).  The ratio rule is a finite-sample heuristic and the
// classification says so in `notes`.  Disjointness evidence, when supplied,
// enables the symmetric verdict branch.
FamilyClassification classify_family(const CodeFamily& family, const std::vector<std::size_t>& sizes,
                                     const std::optional<DivergenceEvidence>& disjointness = std::nullopt);

// Human-readable consequence of a classification verdict for the group B of
// gates implementable with bounded error spread.  Precondition: verdict is not
// inconclusive.
std::string b_group_report(const FamilyClassification& fc);

std::string verdict_name(FamilyClassification::Verdict v);

} // namespace stabspread
