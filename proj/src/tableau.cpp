#include "stabspread/tableau.hpp"

#include "stabspread/error.hpp"

namespace stabspread {

TableauState::TableauState(std::size_t n) : n_(n) {
    if (n == 0) throw PreconditionError("tableau: need at least one qubit");
    stab_.reserve(n);
    destab_.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
        stab_.push_back(PauliOperator::single(n, q, 'Z'));
        destab_.push_back(PauliOperator::single(n, q, 'X'));
    }
}

TableauState TableauState::from_stabilisers(std::size_t n,
                                            const std::vector<PauliOperator>& rows) {
    if (rows.size() != n)
        throw PreconditionError("from_stabilisers: need exactly n rows for a pure state");
    gf2::RowBasis basis(2 * n);
    for (const auto& row : rows)
        if (!basis.add(pauli::symplectic_row(row)))
            throw InvariantError("from_stabilisers: rows are dependent");
    TableauState state(n);
    std::mt19937_64 rng(0); // never consulted: every outcome is forced
    for (const auto& row : rows) {
        auto res = state.measure_pauli(row, false, rng);
        if (res.deterministic && res.outcome)
            throw InvariantError("from_stabilisers: rows are inconsistent (forced -1 outcome)");
    }
    for (const auto& row : rows)
        if (state.expectation(row) != +1)
            throw InvariantError("from_stabilisers: rows are dependent or do not commute");
    return state;
}

void TableauState::apply_gate(const CliffordGate& g) { apply_map(gate_map(g, n_)); }

void TableauState::apply_map(const clifford::CliffordMap& m) {
    if (m.num_qubits() != n_) throw PreconditionError("tableau: map register size differs");
    for (auto& row : stab_) row = m.conjugate(row);
    for (auto& row : destab_) row = m.conjugate(row);
}

void TableauState::apply_pauli(const PauliOperator& p) {
    if (p.num_qubits() != n_) throw PreconditionError("tableau: pauli register size differs");
    // P R P^dag = -R exactly when P and R anticommute (sign-exact for
    // Hermitian P up to the global phase of P, which cancels in conjugation).
    for (auto& row : stab_)
        if (!row.commutes_with(p)) row.multiply_phase(2);
    for (auto& row : destab_)
        if (!row.commutes_with(p)) row.multiply_phase(2);
}

TableauState::MeasureResult TableauState::measure_pauli(const PauliOperator& obs,
                                                        std::optional<bool> forced,
                                                        std::mt19937_64& rng) {
    if (obs.num_qubits() != n_) throw PreconditionError("measure: register size differs");
    if (obs.is_identity_up_to_phase())
        throw PreconditionError("measure: observable must be non-identity");
    if (!obs.is_hermitian()) throw PreconditionError("measure: observable must be Hermitian");

    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n_; ++i) {
        if (!stab_[i].commutes_with(obs)) {
            pivot = i;
            break;
        }
    }

    MeasureResult res;
    if (!pivot) {
        // obs commutes with a maximal stabiliser group, so it lies in the
        // group up to sign; the destabiliser pairing names the combination.
        PauliOperator prod = PauliOperator::identity(n_);
        for (std::size_t i = 0; i < n_; ++i)
            if (!destab_[i].commutes_with(obs)) prod = prod * stab_[i];
        res.deterministic = true;
        if (prod == obs) {
            res.outcome = false;
        } else {
            PauliOperator neg = obs;
            neg.multiply_phase(2);
            if (prod != neg)
                throw InvariantError("measure: group combination mismatch for observable " +
                                     obs.to_string());
            res.outcome = true;
        }
        return res;
    }

    const PauliOperator old_pivot = stab_[*pivot];
    for (std::size_t i = 0; i < n_; ++i) {
        if (i != *pivot && !stab_[i].commutes_with(obs)) stab_[i] = stab_[i] * old_pivot;
        if (!destab_[i].commutes_with(obs)) destab_[i] = destab_[i] * old_pivot;
    }
    destab_[*pivot] = old_pivot;

    res.deterministic = false;
    res.outcome = forced ? *forced : static_cast<bool>(rng() & 1);
    stab_[*pivot] = obs;
    if (res.outcome) stab_[*pivot].multiply_phase(2);
    return res;
}

TableauState::MeasureResult TableauState::measure(char basis, std::size_t q,
                                                  std::optional<bool> forced,
                                                  std::mt19937_64& rng) {
    if (q >= n_) throw PreconditionError("measure: qubit outside register");
    if (basis != 'X' && basis != 'Z') throw PreconditionError("measure: basis must be X or Z");
    return measure_pauli(PauliOperator::single(n_, q, basis), forced, rng);
}

int TableauState::expectation(const PauliOperator& p) const {
    if (p.num_qubits() != n_) throw PreconditionError("expectation: register size differs");
    if (!p.is_hermitian()) throw PreconditionError("expectation: operator must be Hermitian");
    if (p.is_identity_up_to_phase()) return p.phase() == 0 ? +1 : -1;
    for (const auto& row : stab_)
        if (!row.commutes_with(p)) return 0;
    PauliOperator prod = PauliOperator::identity(n_);
    for (std::size_t i = 0; i < n_; ++i)
        if (!destab_[i].commutes_with(p)) prod = prod * stab_[i];
    if (prod == p) return +1;
    PauliOperator neg = p;
    neg.multiply_phase(2);
    if (prod == neg) return -1;
    throw InvariantError("expectation: group combination mismatch");
}

void TableauState::validate() const {
    for (const auto& row : stab_)
        if (!row.is_hermitian()) throw InvariantError("tableau: non-Hermitian stabiliser row");
    for (const auto& row : destab_)
        if (!row.is_hermitian()) throw InvariantError("tableau: non-Hermitian destabiliser row");
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (!stab_[i].commutes_with(stab_[j]))
                throw InvariantError("tableau: stabiliser rows anticommute");
            if (!destab_[i].commutes_with(destab_[j]))
                throw InvariantError("tableau: destabiliser rows anticommute");
            bool anti = !destab_[i].commutes_with(stab_[j]);
            if (anti != (i == j)) throw InvariantError("tableau: pairing pattern broken");
        }
    }
}

TableauRecord simulate_tableau(const Circuit& c, const TableauRunOptions& opts) {
    c.validate();
    TableauRecord record;
    if (opts.initial) {
        if (opts.initial->num_qubits() != c.n)
            throw PreconditionError("simulate_tableau: initial state register size differs");
        record.state = *opts.initial;
    } else {
        record.state = TableauState(c.n);
    }
    std::mt19937_64 rng(opts.seed);

    for (const auto& op : c.ops) {
        if (const auto* g = std::get_if<CliffordGate>(&op)) {
            record.state.apply_gate(*g);
        } else if (std::holds_alternative<TGate>(op)) {
            throw PreconditionError("simulate_tableau: T gates need the dense backend");
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
