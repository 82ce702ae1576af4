#include "stabspread/dense.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "stabspread/error.hpp"

namespace stabspread {

namespace {
using cplx = std::complex<double>;
constexpr double kDetTol = 1e-12; // probability this close to 0/1 is deterministic
} // namespace

DenseState::DenseState(std::size_t n) : n_(n) {
    if (n == 0) throw PreconditionError("dense: need at least one qubit");
    if (n > kMaxQubits)
        throw PreconditionError("dense: " + std::to_string(n) + " qubits exceeds the dense limit of " +
                                std::to_string(kMaxQubits));
    amps_.assign(std::size_t(1) << n, cplx(0.0));
    amps_[0] = 1.0;
}

DenseState::DenseState(std::size_t n, std::vector<cplx> amps) : DenseState(n) {
    if (amps.size() != (std::size_t(1) << n))
        throw PreconditionError("dense: amplitude vector has the wrong length");
    amps_ = std::move(amps);
    if (std::abs(norm() - 1.0) > 1e-9)
        throw PreconditionError("dense: amplitudes are not normalised");
}

namespace {

// u is a 2x2 gate applied at qubit q.
void apply_1q(std::vector<cplx>& amps, std::size_t q, const cplx u[2][2]) {
    const std::size_t bit = std::size_t(1) << q;
    for (std::size_t base = 0; base < amps.size(); ++base) {
        if (base & bit) continue;
        cplx a0 = amps[base], a1 = amps[base | bit];
        amps[base] = u[0][0] * a0 + u[0][1] * a1;
        amps[base | bit] = u[1][0] * a0 + u[1][1] * a1;
    }
}

} // namespace

void DenseState::apply_gate(const CliffordGate& g) {
    for (std::size_t t : g.targets)
        if (t >= n_) throw PreconditionError("dense: gate target outside register");
    const double inv_r2 = 1.0 / std::sqrt(2.0);
    if (g.name == "H") {
        const cplx u[2][2] = {{inv_r2, inv_r2}, {inv_r2, -inv_r2}};
        apply_1q(amps_, g.targets[0], u);
    } else if (g.name == "S") {
        const cplx u[2][2] = {{1.0, 0.0}, {0.0, cplx(0, 1)}};
        apply_1q(amps_, g.targets[0], u);
    } else if (g.name == "SDG") {
        const cplx u[2][2] = {{1.0, 0.0}, {0.0, cplx(0, -1)}};
        apply_1q(amps_, g.targets[0], u);
    } else if (g.name == "X" || g.name == "Y" || g.name == "Z") {
        apply_pauli(PauliOperator::single(n_, g.targets[0], g.name[0]));
    } else if (g.name == "CNOT") {
        const std::size_t c = std::size_t(1) << g.targets[0];
        const std::size_t t = std::size_t(1) << g.targets[1];
        for (std::size_t j = 0; j < amps_.size(); ++j)
            if ((j & c) && !(j & t)) std::swap(amps_[j], amps_[j | t]);
    } else if (g.name == "CZ") {
        const std::size_t a = std::size_t(1) << g.targets[0];
        const std::size_t b = std::size_t(1) << g.targets[1];
        for (std::size_t j = 0; j < amps_.size(); ++j)
            if ((j & a) && (j & b)) amps_[j] = -amps_[j];
    } else if (g.name == "SWAP") {
        const std::size_t a = std::size_t(1) << g.targets[0];
        const std::size_t b = std::size_t(1) << g.targets[1];
        for (std::size_t j = 0; j < amps_.size(); ++j) {
            bool ba = j & a, bb = j & b;
            if (ba && !bb) std::swap(amps_[j], amps_[(j ^ a) | b]);
        }
    } else {
        throw PreconditionError("dense: unknown gate '" + g.name + "'");
    }
}

void DenseState::apply_t(std::size_t q, bool dagger) {
    if (q >= n_) throw PreconditionError("dense: T target outside register");
    const cplx phase = std::polar(1.0, (dagger ? -1.0 : 1.0) * std::numbers::pi / 4.0);
    const std::size_t bit = std::size_t(1) << q;
    for (std::size_t j = 0; j < amps_.size(); ++j)
        if (j & bit) amps_[j] *= phase;
}

void DenseState::apply_pauli(const PauliOperator& p) {
    if (p.num_qubits() != n_) throw PreconditionError("dense: pauli register size differs");
    std::uint64_t xm = 0, zm = 0;
    for (std::size_t q : p.x_bits().ones()) xm |= std::uint64_t(1) << q;
    for (std::size_t q : p.z_bits().ones()) zm |= std::uint64_t(1) << q;
    static const cplx iphase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    // i^phase X^x Z^z |j> = i^phase (-1)^{j.z} |j ^ x>
    std::vector<cplx> out(amps_.size());
    for (std::size_t j = 0; j < amps_.size(); ++j) {
        cplx v = iphase[p.phase()] * amps_[j];
        if (std::popcount(j & zm) & 1) v = -v;
        out[j ^ xm] = v;
    }
    amps_ = std::move(out);
}

DenseState::MeasureResult DenseState::measure(char basis, std::size_t q,
                                              std::optional<bool> forced, std::mt19937_64& rng) {
    if (q >= n_) throw PreconditionError("dense: measured qubit outside register");
    if (basis != 'X' && basis != 'Z') throw PreconditionError("dense: basis must be X or Z");
    if (basis == 'X') apply_gate(CliffordGate{"H", {q}});

    const std::size_t bit = std::size_t(1) << q;
    double p1 = 0.0;
    for (std::size_t j = 0; j < amps_.size(); ++j)
        if (j & bit) p1 += std::norm(amps_[j]);

    MeasureResult res;
    res.prob_one = p1;
    if (p1 <= kDetTol) {
        res.outcome = false;
        res.deterministic = true;
    } else if (p1 >= 1.0 - kDetTol) {
        res.outcome = true;
        res.deterministic = true;
    } else if (forced) {
        res.outcome = *forced;
    } else {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        res.outcome = coin(rng) < p1;
    }
    if (forced && res.deterministic && *forced != res.outcome)
        throw PreconditionError("dense: forced outcome has probability ~0");

    const double keep = res.outcome ? p1 : 1.0 - p1;
    const double scale = 1.0 / std::sqrt(keep);
    for (std::size_t j = 0; j < amps_.size(); ++j) {
        bool one = j & bit;
        amps_[j] = (one == res.outcome) ? amps_[j] * scale : cplx(0.0);
    }
    if (basis == 'X') apply_gate(CliffordGate{"H", {q}});
    return res;
}

double DenseState::norm() const {
    double total = 0.0;
    for (const auto& a : amps_) total += std::norm(a);
    return std::sqrt(total);
}

std::complex<double> DenseState::inner(const DenseState& other) const {
    if (other.n_ != n_) throw PreconditionError("dense: inner product register size differs");
    cplx total = 0.0;
    for (std::size_t j = 0; j < amps_.size(); ++j) total += std::conj(amps_[j]) * other.amps_[j];
    return total;
}

double DenseState::fidelity_with(const DenseState& other) const {
    return std::norm(inner(other));
}

std::complex<double> DenseState::expectation(const PauliOperator& p) const {
    DenseState moved = *this;
    moved.apply_pauli(p);
    return inner(moved);
}

DenseRecord simulate_dense(const Circuit& c, const DenseRunOptions& opts) {
    c.validate();
    DenseRecord record;
    if (opts.initial) {
        if (opts.initial->num_qubits() != c.n)
            throw PreconditionError("simulate_dense: initial state register size differs");
        record.state = *opts.initial;
    } else {
        record.state = DenseState(c.n);
    }
    std::mt19937_64 rng(opts.seed);

    for (const auto& op : c.ops) {
        if (const auto* g = std::get_if<CliffordGate>(&op)) {
            record.state.apply_gate(*g);
        } else if (const auto* tg = std::get_if<TGate>(&op)) {
            record.state.apply_t(tg->target, tg->dagger);
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            std::optional<bool> forced;
            auto it = opts.forced.find(m->outcome_label);
            if (it != opts.forced.end()) forced = it->second;
            auto res = record.state.measure(m->basis, m->target, forced, rng);
            record.outcomes[m->outcome_label] = res.outcome;
            record.deterministic[m->outcome_label] = res.deterministic;
            record.measured_order.push_back(m->outcome_label);
        } else if (const auto* cp = std::get_if<ControlledPauli>(&op)) {
            if (cp->condition.evaluate(record.outcomes)) record.state.apply_pauli(cp->pauli);
        } else if (const auto* cg = std::get_if<ControlledGate>(&op)) {
            if (cg->condition.evaluate(record.outcomes)) record.state.apply_gate(cg->gate);
        }
    }
    return record;
}

} // namespace stabspread
