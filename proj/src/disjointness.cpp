#include "stabspread/disjointness.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stabspread/codes.hpp"
#include "stabspread/error.hpp"

namespace stabspread {

namespace {

void hermitise(PauliOperator& p) {
    if (!p.is_hermitian()) p.multiply_phase(1);
    if (!p.is_hermitian()) throw InvariantError("disjointness: operator cannot be made Hermitian");
}

// Inverse of class_name: "I", or letter+index tokens such as "X1" or "Y1X2".
GroupIndex::LogicalClass parse_class(const std::string& text, std::size_t k) {
    GroupIndex::LogicalClass cls{gf2::BitVec(k), gf2::BitVec(k)};
    if (text == "I") return cls;
    if (text.empty()) throw PreconditionError("class label: empty string");
    std::size_t i = 0;
    while (i < text.size()) {
        const char letter = text[i++];
        if (letter != 'X' && letter != 'Y' && letter != 'Z')
            throw PreconditionError("class label '" + text + "': expected X, Y or Z");
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
            throw PreconditionError("class label '" + text + "': letter without logical index");
        std::size_t idx = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            idx = idx * 10 + static_cast<std::size_t>(text[i++] - '0');
        if (idx < 1 || idx > k)
            throw PreconditionError("class label '" + text + "': logical index out of range");
        const std::size_t b = idx - 1;
        if (cls.xbits.get(b) || cls.zbits.get(b))
            throw PreconditionError("class label '" + text + "': repeated logical index");
        if (letter == 'X' || letter == 'Y') cls.xbits.set(b);
        if (letter == 'Z' || letter == 'Y') cls.zbits.set(b);
    }
    return cls;
}

struct BitVecHash {
    std::size_t operator()(const gf2::BitVec& v) const { return v.hash(); }
};

// One distinct support appearing in a representative coset, together with the
// distinct operators realising it (a support may be used by several family
// members when the multiplicity cap allows it).
struct Candidate {
    gf2::BitVec support;
    std::size_t weight = 0;
    std::vector<PauliOperator> ops;
};

struct ClassEnumeration {
    std::vector<Candidate> candidates; // sorted by weight, then support sequence
    bool complete = false;             // true iff the whole coset was walked
};

ClassEnumeration enumerate_class(const StabiliserCode& code, const PauliOperator& rep,
                                 const SearchBudget& budget, std::size_t store_cap) {
    const auto& gens = code.stabilisers;
    const std::size_t m = gens.size();
    std::unordered_map<gf2::BitVec, std::size_t, BitVecHash> index;
    std::vector<Candidate> cands;
    auto push = [&](const PauliOperator& p) {
        gf2::BitVec sup = p.support();
        auto it = index.find(sup);
        if (it == index.end()) {
            index.emplace(sup, cands.size());
            cands.push_back({std::move(sup), p.weight(), {p}});
        } else if (Candidate& c = cands[it->second]; c.ops.size() < store_cap) {
            c.ops.push_back(p);
        }
    };

    ClassEnumeration out;
    if (m <= budget.coset_exponent_cap && m < 63) {
        // Gray-code walk: one generator multiplication per coset element.
        PauliOperator cur = rep;
        push(cur);
        const std::size_t total = std::size_t(1) << m;
        for (std::size_t g = 1; g < total; ++g) {
            cur = cur * gens[static_cast<std::size_t>(std::countr_zero(g))];
            push(cur);
        }
        out.complete = true;
    } else {
        // Too many generators to walk the coset: take products of up to three
        // generators as a sound candidate subset.
        push(rep);
        std::vector<PauliOperator> singles;
        singles.reserve(m);
        for (const auto& g : gens) {
            singles.push_back(rep * g);
            push(singles.back());
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) push(singles[i] * gens[j]);
        if (m * (m - 1) * (m - 2) / 6 <= budget.max_nodes) {
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) {
                    const PauliOperator pij = singles[i] * gens[j];
                    for (std::size_t l = j + 1; l < m; ++l) push(pij * gens[l]);
                }
        }
        out.complete = false;
    }

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return a.support.compare_support(b.support) < 0;
    });
    out.candidates = std::move(cands);
    return out;
}

struct PackOutcome {
    std::size_t count = 0;
    std::vector<PauliOperator> members;
    bool complete = true;
};

// Branch-and-bound multiset packing: choose how many operators of each
// candidate support to take (0..copies) so that no qubit exceeds multiplicity
// c, maximising the total count.  Candidates are weight-ascending, which makes
// the remaining-capacity bound below monotone.
PackOutcome max_packing(const std::vector<Candidate>& all, std::size_t n, std::size_t c,
                        const SearchBudget& budget, bool enumeration_complete) {
    // For c = 1 a support strictly containing another support is never needed:
    // swapping the superset member for the contained one keeps the family
    // disjoint.  (Unsound for c >= 2, where reusing a support can be optimal.)
    std::vector<const Candidate*> eff;
    eff.reserve(all.size());
    if (c == 1) {
        for (const Candidate& cand : all) {
            bool dominated = false;
            for (const Candidate* kept : eff)
                if (kept->support.count_and(cand.support) == kept->weight) {
                    dominated = true;
                    break;
                }
            if (!dominated) eff.push_back(&cand);
        }
    } else {
        for (const Candidate& cand : all) eff.push_back(&cand);
    }

    const std::size_t N = eff.size();
    auto copies = [&](std::size_t i) { return std::min(eff[i]->ops.size(), c); };
    std::vector<std::size_t> suffix(N + 1, 0);
    for (std::size_t i = N; i-- > 0;) suffix[i] = suffix[i + 1] + copies(i);

    using Taken = std::vector<std::pair<std::size_t, std::size_t>>;

    // Greedy passes seed the incumbent: one taking as many copies of each
    // feasible support as fit, one taking single copies (each can beat the
    // other depending on how duplicated supports crowd the capacity).
    auto greedy = [&](bool take_all_copies) {
        Taken taken;
        std::vector<std::size_t> u(n, 0);
        for (std::size_t i = 0; i < N; ++i) {
            std::size_t t = copies(i);
            for (std::size_t q : eff[i]->support.ones()) {
                t = std::min(t, c - u[q]);
                if (t == 0) break;
            }
            if (!take_all_copies && t > 1) t = 1;
            if (t == 0) continue;
            for (std::size_t q : eff[i]->support.ones()) u[q] += t;
            taken.emplace_back(i, t);
        }
        return taken;
    };
    auto total_of = [](const Taken& t) {
        std::size_t s = 0;
        for (const auto& [i, cnt] : t) s += cnt;
        return s;
    };

    Taken best_taken = greedy(true);
    std::size_t best = total_of(best_taken);
    if (Taken alt = greedy(false); total_of(alt) > best) {
        best = total_of(alt);
        best_taken = std::move(alt);
    }

    std::vector<std::size_t> use(n, 0);
    std::size_t free_cap = c * n;
    std::size_t nodes = 0;
    bool complete = true;
    Taken cur_taken;
    std::size_t cur = 0;

    std::function<void(std::size_t)> dfs = [&](std::size_t i) {
        if (cur > best) {
            best = cur;
            best_taken = cur_taken;
        }
        // Fast-forward over candidates with no feasible copies.
        std::size_t t_max = 0;
        while (i < N) {
            t_max = copies(i);
            for (std::size_t q : eff[i]->support.ones()) {
                t_max = std::min(t_max, c - use[q]);
                if (t_max == 0) break;
            }
            if (t_max > 0) break;
            ++i;
        }
        if (i == N) return;
        if (nodes >= budget.max_nodes) {
            complete = false;
            return;
        }
        ++nodes;
        // Remaining members each consume at least weight(i) capacity.
        const std::size_t w = eff[i]->weight;
        if (cur + std::min(free_cap / w, suffix[i]) <= best) return;
        for (std::size_t t = t_max + 1; t-- > 0;) {
            if (t > 0) {
                for (std::size_t q : eff[i]->support.ones()) use[q] += t;
                free_cap -= t * w;
                cur += t;
                cur_taken.emplace_back(i, t);
                dfs(i + 1);
                cur_taken.pop_back();
                cur -= t;
                free_cap += t * w;
                for (std::size_t q : eff[i]->support.ones()) use[q] -= t;
            } else {
                dfs(i + 1);
            }
            if (!complete) return;
        }
    };
    dfs(0);

    PackOutcome out;
    for (const auto& [idx, t] : best_taken)
        for (std::size_t j = 0; j < t; ++j) out.members.push_back(eff[idx]->ops[j]);
    std::sort(out.members.begin(), out.members.end(), pauli::witness_less);
    out.count = out.members.size();
    out.complete = complete && enumeration_complete;
    return out;
}

CDisjointnessRecord make_record(const StabiliserCode& code, const std::string& cls,
                                const ClassEnumeration& en, std::size_t c,
                                const SearchBudget& budget) {
    PackOutcome pk = max_packing(en.candidates, code.n, c, budget, en.complete);
    CDisjointnessRecord rec;
    rec.c = c;
    rec.count = pk.count;
    rec.normalised = Rational(pk.count, c);
    rec.exact = pk.complete;
    rec.witnesses = WitnessSet{cls, c, std::move(pk.members)};
    verify_witness_set(code, rec.witnesses);
    return rec;
}

} // namespace

Rational::Rational(std::size_t n, std::size_t d) : num(n), den(d) {
    if (den == 0) throw PreconditionError("rational: zero denominator");
    if (num == 0) {
        den = 1;
        return;
    }
    const std::size_t g = std::gcd(num, den);
    num /= g;
    den /= g;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<unsigned long long>(num) * o.den <
           static_cast<unsigned long long>(o.num) * den;
}

bool Rational::operator<=(const Rational& o) const { return *this < o || *this == o; }

nlohmann::json Rational::to_json() const {
    return {{"num", num}, {"den", den}, {"str", str()}, {"value", value()}};
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
}

nlohmann::json WitnessSet::to_json() const {
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : members) ms.push_back(m.to_string());
    return {{"class", cls}, {"c", c}, {"count", members.size()}, {"members", std::move(ms)}};
}

void verify_witness_set(const StabiliserCode& code, const WitnessSet& set) {
    if (set.c < 1) throw InvariantError("witness set: multiplicity cap must be at least 1");
    GroupIndex::LogicalClass target;
    try {
        target = parse_class(set.cls, code.k);
    } catch (const Error& e) {
        throw InvariantError(std::string("witness set: bad class label: ") + e.what());
    }
    const GroupIndex gi(code);
    std::vector<std::size_t> use(code.n, 0);
    for (const auto& m : set.members) {
        if (m.num_qubits() != code.n)
            throw InvariantError("witness set: member acts on the wrong number of qubits");
        if (!m.is_hermitian())
            throw InvariantError("witness set: member " + m.to_string() + " is not Hermitian");
        if (!gi.in_normaliser(m))
            throw InvariantError("witness set: member " + m.to_string() +
                                 " is not in the normaliser");
        if (!(gi.logical_class(m) == target))
            throw InvariantError("witness set: member " + m.to_string() +
                                 " does not realise class " + set.cls);
        for (std::size_t q : m.support().ones())
            if (++use[q] > set.c)
                throw InvariantError("witness set: qubit " + std::to_string(q + 1) +
                                     " appears in more than " + std::to_string(set.c) +
                                     " supports");
    }
    for (std::size_t i = 0; i < set.members.size(); ++i)
        for (std::size_t j = i + 1; j < set.members.size(); ++j)
            if (set.members[i].equals_up_to_phase(set.members[j]))
                throw InvariantError("witness set: duplicate member " +
                                     set.members[i].to_string());
}

nlohmann::json CDisjointnessRecord::to_json() const {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& m : witnesses.members) ws.push_back(m.to_string());
    return {{"c", c},
            {"count", count},
            {"normalised", normalised.to_json()},
            {"exact", exact},
            {"witnesses", std::move(ws)}};
}

CDisjointnessRecord c_disjointness_record(const StabiliserCode& code,
                                          const PauliOperator& logical, std::size_t c,
                                          const SearchBudget& budget) {
    if (c < 1) throw PreconditionError("disjointness: multiplicity cap must be at least 1");
    if (logical.num_qubits() != code.n)
        throw PreconditionError("disjointness: operator acts on the wrong number of qubits");
    const GroupIndex gi(code);
    if (!gi.in_normaliser(logical))
        throw PreconditionError("disjointness: operator is not in the normaliser");
    const auto cls = gi.logical_class(logical);
    if (cls.trivial())
        throw PreconditionError("disjointness: operator lies in the stabiliser group");
    PauliOperator rep = logical;
    hermitise(rep);
    const auto en = enumerate_class(code, rep, budget, c);
    return make_record(code, class_name(cls, code.k), en, c, budget);
}

CDisjointnessRecord one_disjointness(const StabiliserCode& code, const PauliOperator& logical,
                                     const SearchBudget& budget) {
    return c_disjointness_record(code, logical, 1, budget);
}

Rational delta_upper_bound(std::size_t n, std::size_t distance) {
    if (distance == 0)
        throw PreconditionError("disjointness upper bound: distance must be at least 1");
    if (n == 0) throw PreconditionError("disjointness upper bound: empty code");
    return Rational(n, distance);
}

Rational delta_upper_bound(const StabiliserCode& code) {
    const DistanceReport dr = code_distance(code);
    if (dr.code_distance_lower == 0)
        throw InvariantError("disjointness upper bound: distance analysis gave no lower bound");
    return delta_upper_bound(code.n, dr.code_distance_lower);
}

nlohmann::json DisjointnessReport::to_json() const {
    nlohmann::json pls = nlohmann::json::array();
    for (const auto& pl : per_logical) {
        nlohmann::json recs = nlohmann::json::array();
        for (const auto& r : pl.records) recs.push_back(r.to_json());
        pls.push_back({{"class", pl.cls},
                       {"delta1", {{"count", pl.delta1}, {"exact", pl.delta1_exact}}},
                       {"records", std::move(recs)}});
    }
    nlohmann::json lo = delta_lower.to_json();
    lo["c"] = delta_lower_c;
    return {{"code", code_label},
            {"per_logical", std::move(pls)},
            {"delta_lower", std::move(lo)},
            {"delta_upper", delta_upper.to_json()},
            {"exact", exact}};
}

DisjointnessReport disjointness_report(const StabiliserCode& code,
                                       const DisjointnessOptions& opts) {
    std::vector<std::size_t> cs = opts.cs;
    if (cs.empty()) throw PreconditionError("disjointness report: no multiplicity caps given");
    for (std::size_t c : cs)
        if (c == 0)
            throw PreconditionError("disjointness report: multiplicity caps must be positive");
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    if (cs.front() != 1) cs.insert(cs.begin(), 1);

    const GroupIndex gi(code);
    std::vector<std::string> classes = opts.classes;
    if (classes.empty()) {
        if (code.k <= 2) {
            const std::size_t total = std::size_t(1) << (2 * code.k);
            for (std::size_t mask = 1; mask < total; ++mask) {
                GroupIndex::LogicalClass cls{gf2::BitVec(code.k), gf2::BitVec(code.k)};
                for (std::size_t i = 0; i < code.k; ++i) {
                    const std::size_t digit = (mask >> (2 * i)) & 3; // 0=I 1=X 2=Y 3=Z
                    if (digit == 1 || digit == 2) cls.xbits.set(i);
                    if (digit == 2 || digit == 3) cls.zbits.set(i);
                }
                classes.push_back(class_name(cls, code.k));
            }
        } else {
            for (std::size_t i = 1; i <= code.k; ++i)
                for (const char* l : {"X", "Y", "Z"})
                    classes.push_back(std::string(l) + std::to_string(i));
        }
    }
    if (classes.empty()) throw PreconditionError("disjointness report: no classes to analyse");

    DisjointnessReport rep;
    rep.code_label = code.label;
    std::vector<PauliOperator> class_reps;
    for (const auto& cls_name : classes) {
        const auto target = parse_class(cls_name, code.k);
        if (target.trivial())
            throw PreconditionError("disjointness report: class " + cls_name + " is trivial");
        PauliOperator crep = gi.class_representative(target);
        hermitise(crep);
        const auto en = enumerate_class(code, crep, opts.budget, cs.back());
        DisjointnessReport::PerLogical pl;
        pl.cls = cls_name;
        for (std::size_t c : cs) {
            CDisjointnessRecord rec = make_record(code, cls_name, en, c, opts.budget);
            if (c == 1) {
                pl.delta1 = rec.count;
                pl.delta1_exact = rec.exact;
            }
            pl.records.push_back(std::move(rec));
        }
        rep.per_logical.push_back(std::move(pl));
        class_reps.push_back(std::move(crep));
    }

    rep.delta_lower = Rational(0, 1);
    rep.delta_lower_c = cs.front();
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        Rational mn = rep.per_logical.front().records[ci].normalised;
        for (const auto& pl : rep.per_logical)
            if (pl.records[ci].normalised < mn) mn = pl.records[ci].normalised;
        if (rep.delta_lower < mn) {
            rep.delta_lower = mn;
            rep.delta_lower_c = cs[ci];
        }
    }
    rep.delta_upper = opts.known_distance ? delta_upper_bound(code.n, *opts.known_distance)
                                          : delta_upper_bound(code);
    rep.exact = true;
    for (const auto& pl : rep.per_logical)
        for (const auto& r : pl.records) rep.exact = rep.exact && r.exact;

    // Cross-class audit: families of one class against representatives of
    // anticommuting classes must satisfy the overlap-counting inequalities.
    for (std::size_t a = 0; a < classes.size(); ++a)
        for (std::size_t b = 0; b < classes.size(); ++b) {
            if (a == b || class_reps[a].commutes_with(class_reps[b])) continue;
            for (const auto& r : rep.per_logical[a].records)
                if (!overlap_capacity_bound(r.witnesses, class_reps[b]) ||
                    !anticommuting_weight_bound(gi, r.witnesses, class_reps[b]))
                    throw InvariantError("disjointness report: overlap-counting audit failed for " +
                                         classes[a] + " against " + classes[b]);
        }
    if (!(rep.delta_lower <= rep.delta_upper))
        throw InvariantError("disjointness report: lower bound " + rep.delta_lower.str() +
                             " exceeds upper bound " + rep.delta_upper.str());
    return rep;
}

bool overlap_capacity_bound(const WitnessSet& set, const PauliOperator& u) {
    const gf2::BitVec us = u.support();
    std::size_t total = 0;
    for (const auto& m : set.members) total += m.support().count_and(us);
    return total <= set.c * u.weight();
}

bool anticommuting_weight_bound(const GroupIndex& gi, const WitnessSet& set,
                                const PauliOperator& u) {
    if (set.members.empty()) return true;
    if (!gi.in_normaliser(u))
        throw PreconditionError("weight bound: operator must be in the normaliser");
    if (set.members.front().commutes_with(u)) return true; // classes commute: no claim
    const gf2::BitVec us = u.support();
    for (const auto& m : set.members)
        if (!m.support().intersects(us)) return false;
    return set.members.size() <= set.c * u.weight();
}

nlohmann::json ConcatDisjointness::to_json() const {
    nlohmann::json ws = nlohmann::json::array();
    for (const auto& s : witnesses) ws.push_back(s.to_json());
    return {{"bound", bound.to_json()}, {"c", c}, {"witnesses", std::move(ws)}};
}

ConcatDisjointness concat_delta_lower(const StabiliserCode& outer,
                                      const DisjointnessReport& outer_report,
                                      const StabiliserCode& inner,
                                      const DisjointnessReport& inner_report) {
    const Rational one(1, 1);
    if (!(one < outer_report.delta_lower) || !(one < inner_report.delta_lower))
        throw PreconditionError("concatenated bound: both factors must certify more than 1");
    if (inner.k != 1)
        throw PreconditionError("concatenated bound: inner code must have one logical qubit");

    const std::size_t c_out = outer_report.delta_lower_c;
    const std::size_t c_in = inner_report.delta_lower_c;
    auto find_set = [](const DisjointnessReport& r, const std::string& cls,
                       std::size_t c) -> const WitnessSet* {
        for (const auto& pl : r.per_logical)
            if (pl.cls == cls)
                for (const auto& rec : pl.records)
                    if (rec.c == c) return &rec.witnesses;
        return nullptr;
    };

    std::map<char, const WitnessSet*> inner_fams;
    for (const char L : {'X', 'Y', 'Z'}) {
        const WitnessSet* s = find_set(inner_report, std::string(1, L) + "1", c_in);
        if (!s)
            throw PreconditionError(
                "concatenated bound: inner report must cover X1, Y1 and Z1 at its achieving "
                "multiplicity cap");
        verify_witness_set(inner, *s);
        inner_fams[L] = s;
    }
    std::size_t m_in = inner_fams['X']->members.size();
    for (const auto& [L, s] : inner_fams) m_in = std::min(m_in, s->members.size());
    if (m_in == 0) throw PreconditionError("concatenated bound: empty inner family");

    const StabiliserCode big = concatenate(outer, inner);
    ConcatDisjointness out;
    out.c = c_out * c_in;
    out.bound = outer_report.delta_lower * inner_report.delta_lower;

    for (const auto& pl : outer_report.per_logical) {
        const WitnessSet* os = find_set(outer_report, pl.cls, c_out);
        if (!os)
            throw PreconditionError("concatenated bound: outer report misses its achieving "
                                    "record for class " + pl.cls);
        verify_witness_set(outer, *os);

        WitnessSet comp;
        comp.cls = pl.cls;
        comp.c = out.c;
        for (const auto& om : os->members) {
            for (std::size_t j = 0; j < m_in; ++j) {
                PauliOperator big_op = PauliOperator::identity(big.n);
                for (std::size_t q : om.support().ones()) {
                    const char L = om.letter_at(q);
                    big_op = big_op * inner_fams.at(L)->members[j].embed(big.n, q * inner.n);
                }
                hermitise(big_op);
                comp.members.push_back(std::move(big_op));
            }
        }
        std::sort(comp.members.begin(), comp.members.end(), pauli::witness_less);
        verify_witness_set(big, comp);
        out.witnesses.push_back(std::move(comp));
    }
    return out;
}

namespace {

// Toric layout helpers matching the torus builder: horizontal edge h(r,c) and
// vertical edge v(r,c) on an l x l torus.
std::size_t toric_h(std::size_t l, std::size_t r, std::size_t c) {
    return (r % l) * l + (c % l);
}
std::size_t toric_v(std::size_t l, std::size_t r, std::size_t c) {
    return l * l + (r % l) * l + (c % l);
}

// Translate-t representative of the class acting as `a1` on logical 1 and
// `a2` on logical 2 (0=I 1=X 2=Y 3=Z): straight loops on the matching edge
// family, with Y classes taking the loop product crossing at the diagonal.
PauliOperator toric_member(std::size_t l, std::size_t a1, std::size_t a2, std::size_t t) {
    PauliOperator p(2 * l * l);
    if (a1 == 1 || a1 == 2)
        for (std::size_t i = 0; i < l; ++i) p.set_letter(toric_h(l, i, t), 'X');
    if (a1 == 3)
        for (std::size_t j = 0; j < l; ++j) p.set_letter(toric_h(l, t, j), 'Z');
    if (a1 == 2)
        for (std::size_t j = 0; j < l; ++j) p.set_letter(toric_h(l, t, j), j == t ? 'Y' : 'Z');
    if (a2 == 1 || a2 == 2)
        for (std::size_t i = 0; i < l; ++i) p.set_letter(toric_v(l, t, i), 'X');
    if (a2 == 3)
        for (std::size_t i = 0; i < l; ++i) p.set_letter(toric_v(l, i, t), 'Z');
    if (a2 == 2)
        for (std::size_t i = 0; i < l; ++i) p.set_letter(toric_v(l, i, t), i == t ? 'Y' : 'Z');
    hermitise(p);
    return p;
}

std::string toric_class_label(std::size_t a1, std::size_t a2) {
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    if (a1) s += std::string(1, letters[a1]) + "1";
    if (a2) s += std::string(1, letters[a2]) + "2";
    return s;
}

// Verified translated families for every non-trivial toric class at c = 2;
// each has l members, so together they certify a lower bound of l/2.
double toric_constructive_value(std::size_t l) {
    const StabiliserCode code = toric(l);
    for (std::size_t a1 = 0; a1 < 4; ++a1)
        for (std::size_t a2 = 0; a2 < 4; ++a2) {
            if (a1 == 0 && a2 == 0) continue;
            WitnessSet set;
            set.cls = toric_class_label(a1, a2);
            set.c = 2;
            for (std::size_t t = 0; t < l; ++t) set.members.push_back(toric_member(l, a1, a2, t));
            verify_witness_set(code, set);
        }
    return static_cast<double>(l) / 2.0;
}

PauliOperator surface_sheet(const SurfaceLattice& lat, std::size_t n, std::size_t p) {
    PauliOperator op(n);
    for (std::size_t y = 0; y < lat.ly; ++y)
        for (std::size_t z = 0; z < lat.lz; ++z)
            op.set_letter(*lat.x_edge(static_cast<int>(p), static_cast<int>(y),
                                      static_cast<int>(z)),
                          'X');
    return op;
}

PauliOperator surface_column(const SurfaceLattice& lat, std::size_t n, std::size_t y0,
                             std::size_t z0) {
    PauliOperator op(n);
    for (std::size_t p = 0; p < lat.lx; ++p)
        op.set_letter(*lat.x_edge(static_cast<int>(p), static_cast<int>(y0),
                                  static_cast<int>(z0)),
                      'Z');
    return op;
}

// Sheet t times the x-directed column through (y, z) = (t, t mod lz): the
// sheets are pairwise disjoint and the columns are pairwise disjoint, so no
// qubit lies in more than two members of the family {member_t}.
PauliOperator surface_y_member(const SurfaceLattice& lat, std::size_t n, std::size_t t) {
    PauliOperator op = surface_sheet(lat, n, t);
    const std::size_t y0 = t % lat.ly;
    const std::size_t z0 = t % lat.lz;
    const std::size_t cross = *lat.x_edge(static_cast<int>(t), static_cast<int>(y0),
                                          static_cast<int>(z0));
    for (std::size_t p = 0; p < lat.lx; ++p) {
        const std::size_t q = *lat.x_edge(static_cast<int>(p), static_cast<int>(y0),
                                          static_cast<int>(z0));
        op.set_letter(q, q == cross ? 'Y' : 'Z');
    }
    hermitise(op);
    return op;
}

double surface_constructive_value(const StabiliserCode& code, const SurfaceLattice& lat) {
    const std::size_t l = lat.lx;
    WitnessSet xs{"X1", 1, {}};
    WitnessSet zs{"Z1", 1, {}};
    WitnessSet ys{"Y1", 2, {}};
    for (std::size_t t = 0; t < l; ++t) {
        xs.members.push_back(surface_sheet(lat, code.n, t));
        zs.members.push_back(surface_column(lat, code.n, t % lat.ly, t % lat.lz));
        ys.members.push_back(surface_y_member(lat, code.n, t));
    }
    verify_witness_set(code, xs);
    verify_witness_set(code, zs);
    verify_witness_set(code, ys);
    // A 1-family is in particular a 2-family, so at c = 2 every class has l
    // members: the certified minimum is l/2.
    return static_cast<double>(l) / 2.0;
}

DisjointnessReport synthetic_report(const StabiliserCode& code, const ConcatDisjointness& cd) {
    DisjointnessReport r;
    r.code_label = code.label;
    bool first = true;
    for (const auto& set : cd.witnesses) {
        DisjointnessReport::PerLogical pl;
        pl.cls = set.cls;
        pl.delta1 = 1;
        pl.delta1_exact = false;
        CDisjointnessRecord rec;
        rec.c = cd.c;
        rec.count = set.members.size();
        rec.normalised = Rational(rec.count, cd.c);
        rec.exact = false;
        rec.witnesses = set;
        pl.records.push_back(std::move(rec));
        if (first || pl.records.front().normalised < r.delta_lower)
            r.delta_lower = pl.records.front().normalised;
        first = false;
        r.per_logical.push_back(std::move(pl));
    }
    r.delta_lower_c = cd.c;
    r.delta_upper = Rational(code.n, 1); // trivial but valid: distance >= 1
    r.exact = false;
    return r;
}

} // namespace

WitnessSet toric_parallel_loops(std::size_t l, const std::string& cls) {
    if (l < 2) throw PreconditionError("toric loops: l must be at least 2");
    std::size_t a1 = 0;
    std::size_t a2 = 0;
    if (cls == "X1")
        a1 = 1;
    else if (cls == "Z1")
        a1 = 3;
    else if (cls == "X2")
        a2 = 1;
    else if (cls == "Z2")
        a2 = 3;
    else
        throw PreconditionError("toric loops: class must be one of X1, X2, Z1, Z2");
    const StabiliserCode code = toric(l);
    WitnessSet set;
    set.cls = cls;
    set.c = 1;
    for (std::size_t t = 0; t < l; ++t) set.members.push_back(toric_member(l, a1, a2, t));
    verify_witness_set(code, set);
    return set;
}

WitnessSet surface3d_axis_family(std::size_t l, char axis) {
    if (l < 2) throw PreconditionError("cubic family: l must be at least 2");
    if (axis != 'X' && axis != 'Z')
        throw PreconditionError("cubic family: axis must be 'X' or 'Z'");
    const StabiliserCode code = surface3d(l, l, l);
    const SurfaceLattice lat = make_surface_lattice(l, l, l);
    WitnessSet set;
    set.cls = axis == 'X' ? "X1" : "Z1";
    set.c = 1;
    for (std::size_t t = 0; t < l; ++t)
        set.members.push_back(axis == 'X' ? surface_sheet(lat, code.n, t)
                                          : surface_column(lat, code.n, t, t));
    verify_witness_set(code, set);
    return set;
}

WitnessSet surface3d_y_family(std::size_t l) {
    if (l != 2 && l != 3)
        throw PreconditionError("cubic Y family: supported sizes are 2 and 3");
    const StabiliserCode code = surface3d(l, l, l);
    const SurfaceLattice lat = make_surface_lattice(l, l, l);
    WitnessSet set;
    set.cls = "Y1";
    set.c = 2;
    for (std::size_t t = 0; t < l; ++t) set.members.push_back(surface_y_member(lat, code.n, t));
    verify_witness_set(code, set);
    return set;
}

DivergenceEvidence disjointness_divergence(const CodeFamily& family,
                                           const std::vector<std::size_t>& sizes) {
    if (sizes.empty())
        throw PreconditionError("disjointness divergence: at least one size required");
    for (std::size_t i = 1; i < sizes.size(); ++i)
        if (sizes[i] <= sizes[i - 1])
            throw PreconditionError("disjointness divergence: sizes must be strictly increasing");

    const std::string& kind = family.name();
    std::map<std::string, DisjointnessReport> base_cache;
    auto base_report = [&base_cache](const StabiliserCode& c) -> const DisjointnessReport& {
        auto it = base_cache.find(c.label);
        if (it == base_cache.end()) {
            DisjointnessOptions o;
            o.cs = {1, 2, 4};
            it = base_cache.emplace(c.label, disjointness_report(c, o)).first;
        }
        return it->second;
    };

    DivergenceEvidence ev;
    for (std::size_t l : sizes) {
        if (!family.in_domain(l))
            throw PreconditionError("disjointness divergence: size " + std::to_string(l) +
                                    " outside the domain of family " + kind);
        double v = 0;
        if (kind == "toric") {
            v = toric_constructive_value(l);
        } else if (kind == "surface2d") {
            v = surface_constructive_value(family.instantiate(l), make_surface_lattice(l, l, 1));
        } else if (kind == "surface3d") {
            v = surface_constructive_value(family.instantiate(l), make_surface_lattice(l, l, l));
        } else {
            const std::vector<StabiliserCode> chain = family.hints(l).concat_chain;
            if (chain.empty())
                throw PreconditionError("disjointness divergence: family " + kind +
                                        " provides no concatenation chain");
            DisjointnessReport cur = base_report(chain.back());
            StabiliserCode cur_code = chain.back();
            for (std::size_t i = chain.size() - 1; i-- > 0;) {
                const ConcatDisjointness cd =
                    concat_delta_lower(chain[i], base_report(chain[i]), cur_code, cur);
                cur_code = concatenate(chain[i], cur_code);
                cur = synthetic_report(cur_code, cd);
            }
            if (cur_code.n != family.instantiate(l).n)
                throw InvariantError("disjointness divergence: chain does not assemble the "
                                     "family instance at size " + std::to_string(l));
            v = cur.delta_lower.value();
        }
        ev.values.push_back(v);
    }
    ev.diverging = ev.values.size() >= 2;
    for (std::size_t i = 1; i < ev.values.size(); ++i)
        ev.diverging = ev.diverging && ev.values[i] > ev.values[i - 1];
    ev.source = "verified disjoint-family constructions (" + kind + ")";
    return ev;
}

} // namespace stabspread
