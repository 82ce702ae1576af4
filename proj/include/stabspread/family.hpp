#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "stabspread/code.hpp"

namespace stabspread {

// Structural side information a family can attach to each instance.  All of it
// is advisory: consumers must verify every claim against the code itself before
// relying on it (see analysis.cpp).
struct DistanceHints {
    // Each entry is a list of pairwise-disjoint representatives of one logical
    // class.  m disjoint representatives of class D prove, for every class C
    // whose pairing with D is odd, that any representative of C has weight at
    // least m: it must touch each disjoint copy of D on at least one qubit.
    std::vector<std::vector<PauliOperator>> partner_families;

    // Candidate low-weight logical representatives (upper-bound witnesses).
    std::vector<PauliOperator> witnesses;

    // For concatenated instances: the factor codes, outermost first.  The
    // instance equals concatenate(chain[0], concatenate(chain[1], ...)).
    std::vector<StabiliserCode> concat_chain;
};

// A one-parameter sequence of codes (indexed by a size parameter l) with
// deterministic construction, lazy thread-safe memoisation, and optional
// structural hints used by distance analysis and classification.
class CodeFamily {
  public:
    using Builder = std::function<StabiliserCode(std::size_t)>;
    using HintBuilder = std::function<DistanceHints(std::size_t)>;

    CodeFamily(std::string name, std::vector<std::size_t> index_domain, Builder builder,
               HintBuilder hint_builder = nullptr,
               std::map<std::string, std::string> metadata = {});

    const std::string& name() const { return name_; }
    const std::vector<std::size_t>& index_domain() const { return domain_; }
    bool in_domain(std::size_t l) const;
    const std::map<std::string, std::string>& metadata() const { return metadata_; }

    // Deterministic; memoised on first use; safe to call concurrently.
    const StabiliserCode& instantiate(std::size_t l) const;

    DistanceHints hints(std::size_t l) const;

  private:
    std::string name_;
    std::vector<std::size_t> domain_;
    Builder builder_;
    HintBuilder hint_builder_;
    std::map<std::string, std::string> metadata_;

    struct Cache {
        std::mutex mutex;
        std::map<std::size_t, StabiliserCode> built;
    };
    std::shared_ptr<Cache> cache_;
};

// Registered kinds: toric, surface2d, surface3d (cubic), steane_concat,
// rm_concat, alternating_concat (Reed-Muller at odd levels, level 1 outermost).
CodeFamily make_family(const std::string& kind);

std::vector<std::string> family_kinds();

} // namespace stabspread
