#include "stabspread/spread.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stabspread/error.hpp"

namespace stabspread {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw PreconditionError("rational: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
}

std::string bound_kind_name(BoundKind kind) {
    switch (kind) {
    case BoundKind::exact_clifford: return "exact_clifford";
    case BoundKind::lightcone: return "lightcone";
    case BoundKind::transversal: return "transversal";
    case BoundKind::locality_preserving: return "locality_preserving";
    }
    throw InvariantError("unknown bound kind");
}

nlohmann::json SpreadReport::to_json() const {
    nlohmann::json j;
    j["channel"] = channel_label;
    j["bound_kind"] = bound_kind_name(bound_kind);
    if (exact_spread) j["exact_spread"] = exact_spread->str();
    if (lightcone_bound) j["lightcone_bound"] = *lightcone_bound;
    nlohmann::json singles = nlohmann::json::object();
    for (const auto& [key, wt] : per_single_qubit) singles[key] = wt;
    j["per_single_qubit"] = std::move(singles);
    return j;
}

Rational spread_of_pauli(const clifford::CliffordMap& m, const PauliOperator& e) {
    if (e.num_qubits() != m.num_qubits())
        throw PreconditionError("spread_of_pauli: register sizes differ");
    if (e.is_identity_up_to_phase())
        throw PreconditionError("spread_of_pauli: spread of the identity is undefined");
    PauliOperator image = m.conjugate(e);
    return Rational(static_cast<long long>(image.weight()), static_cast<long long>(e.weight()));
}

SpreadReport spread_of_clifford(const clifford::CliffordMap& m, const std::string& label) {
    const std::size_t n = m.num_qubits();
    SpreadReport report;
    report.channel_label = label.empty() ? ("clifford_on_" + std::to_string(n)) : label;
    report.bound_kind = BoundKind::exact_clifford;
    std::size_t best = 0;
    for (std::size_t q = 0; q < n; ++q) {
        for (char letter : {'X', 'Y', 'Z'}) {
            PauliOperator e = PauliOperator::single(n, q, letter);
            std::size_t wt = m.conjugate(e).weight();
            report.per_single_qubit[std::string(1, letter) + std::to_string(q + 1)] = wt;
            best = std::max(best, wt);
        }
    }
    report.exact_spread = Rational(static_cast<long long>(best), 1);
    return report;
}

SpreadReport lightcone_spread_bound(const Circuit& c, const std::string& label) {
    c.validate();
    for (const auto& op : c.ops)
        if (!std::holds_alternative<CliffordGate>(op) && !std::holds_alternative<TGate>(op))
            throw PreconditionError(
                "lightcone_spread_bound: circuit has measurements or conditioned operations; "
                "the lightcone of an adaptive channel is not defined by its gate list");

    // cone[q] = qubits an error originating on q can have reached so far.
    std::vector<std::set<std::size_t>> cone(c.n);
    for (std::size_t q = 0; q < c.n; ++q) cone[q].insert(q);
    for (const auto& op : c.ops) {
        const auto* g = std::get_if<CliffordGate>(&op);
        if (!g || g->targets.size() < 2) continue; // 1-qubit gates never move support
        for (auto& cq : cone) {
            bool touches = std::any_of(g->targets.begin(), g->targets.end(),
                                       [&](std::size_t t) { return cq.count(t) != 0; });
            if (touches) cq.insert(g->targets.begin(), g->targets.end());
        }
    }

    SpreadReport report;
    report.channel_label = label.empty() ? ("circuit_on_" + std::to_string(c.n)) : label;
    report.bound_kind = BoundKind::lightcone;
    std::size_t best = 0;
    for (const auto& cq : cone) best = std::max(best, cq.size());
    report.lightcone_bound = best;
    return report;
}

std::size_t transversal_bound(std::size_t num_blocks) {
    if (num_blocks == 0) throw PreconditionError("transversal_bound: need at least one block");
    return num_blocks;
}

std::size_t locality_preserving_bound(std::size_t epsilon, std::size_t dimension) {
    if (dimension == 0)
        throw PreconditionError("locality_preserving_bound: dimension must be >= 1");
    std::size_t base = 2 * epsilon + 1;
    std::size_t out = 1;
    for (std::size_t i = 0; i < dimension; ++i) out *= base;
    return out;
}

nlohmann::json SpreadTrend::to_json() const {
    nlohmann::json j;
    j["family"] = family;
    j["sizes"] = sizes;
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& s : spreads) vals.push_back(s.str());
    j["spreads"] = std::move(vals);
    j["verdict"] = verdict;
    return j;
}

SpreadTrend family_spread_trend(
    const CodeFamily& family,
    const std::function<clifford::CliffordMap(std::size_t)>& channel_builder,
    const std::vector<std::size_t>& sizes) {
    if (sizes.size() < 2)
        throw PreconditionError("family_spread_trend: need at least two sizes");
    SpreadTrend trend;
    trend.family = family.name();
    for (std::size_t l : sizes) {
        if (!family.in_domain(l))
            throw PreconditionError("family_spread_trend: size " + std::to_string(l) +
                                    " outside the domain of " + family.name());
        trend.sizes.push_back(l);
        auto report = spread_of_clifford(channel_builder(l));
        trend.spreads.push_back(*report.exact_spread);
    }

    constexpr double kSlack = 1.10;
    constexpr double kEps = 1e-9;
    double first = trend.spreads.front().value();
    double last = trend.spreads.back().value();
    bool within_first = true;
    bool monotone_up = true;
    for (std::size_t i = 0; i < trend.spreads.size(); ++i) {
        double v = trend.spreads[i].value();
        if (v > first * kSlack + kEps) within_first = false;
        if (i > 0 && v + kEps < trend.spreads[i - 1].value()) monotone_up = false;
    }
    if (within_first)
        trend.verdict = "bounded";
    else if (monotone_up && last > first * kSlack + kEps)
        trend.verdict = "unbounded_trend";
    else
        trend.verdict = "inconclusive";
    return trend;
}

} // namespace stabspread
