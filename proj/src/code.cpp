#include "stabspread/code.hpp"

#include <json.hpp>

#include "stabspread/error.hpp"

namespace stabspread {

void StabiliserCode::validate() const {
    auto bad = [&](const std::string& what) -> void {
        throw InvariantError("invalid code" + (label.empty() ? "" : " '" + label + "'") +
                             ": " + what);
    };
    if (k > n) bad("k exceeds n");
    if (stabilisers.size() != n - k)
        bad("expected " + std::to_string(n - k) + " stabiliser generators, got " +
            std::to_string(stabilisers.size()));
    if (logical_x.size() != k || logical_z.size() != k)
        bad("expected " + std::to_string(k) + " logical X/Z representatives");

    auto check_op = [&](const PauliOperator& p, const std::string& role) {
        if (p.num_qubits() != n) bad(role + " acts on wrong qubit count");
        if (!p.is_hermitian()) bad(role + " is not Hermitian: " + p.to_string());
    };
    for (std::size_t i = 0; i < stabilisers.size(); ++i) {
        check_op(stabilisers[i], "stabiliser " + std::to_string(i));
        if (stabilisers[i].is_identity_up_to_phase())
            bad("stabiliser " + std::to_string(i) + " is the identity");
        for (std::size_t j = i + 1; j < stabilisers.size(); ++j)
            if (!stabilisers[i].commutes_with(stabilisers[j]))
                bad("stabilisers " + std::to_string(i) + " and " + std::to_string(j) +
                    " anticommute");
    }

    gf2::RowBasis basis(2 * n);
    for (std::size_t i = 0; i < stabilisers.size(); ++i)
        if (!basis.add(symplectic_row(stabilisers[i])))
            bad("stabiliser " + std::to_string(i) + " is dependent on earlier ones");

    for (std::size_t i = 0; i < k; ++i) {
        check_op(logical_x[i], "logical X " + std::to_string(i));
        check_op(logical_z[i], "logical Z " + std::to_string(i));
        for (std::size_t s = 0; s < stabilisers.size(); ++s) {
            if (!logical_x[i].commutes_with(stabilisers[s]))
                bad("logical X " + std::to_string(i) + " anticommutes with stabiliser " +
                    std::to_string(s));
            if (!logical_z[i].commutes_with(stabilisers[s]))
                bad("logical Z " + std::to_string(i) + " anticommutes with stabiliser " +
                    std::to_string(s));
        }
        for (std::size_t j = 0; j < k; ++j) {
            bool want_anti = (i == j);
            if (logical_x[i].commutes_with(logical_z[j]) == want_anti)
                bad("logical X " + std::to_string(i) + " / logical Z " + std::to_string(j) +
                    " commutation pattern wrong");
            if (j > i) {
                if (!logical_x[i].commutes_with(logical_x[j]))
                    bad("logical X operators " + std::to_string(i) + "," + std::to_string(j) +
                        " anticommute");
                if (!logical_z[i].commutes_with(logical_z[j]))
                    bad("logical Z operators " + std::to_string(i) + "," + std::to_string(j) +
                        " anticommute");
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (!basis.add(symplectic_row(logical_x[i])))
            bad("logical X " + std::to_string(i) + " lies in the span of earlier operators");
        if (!basis.add(symplectic_row(logical_z[i])))
            bad("logical Z " + std::to_string(i) + " lies in the span of earlier operators");
    }
}

bool StabiliserCode::is_css() const {
    for (const auto& s : stabilisers)
        if (s.x_bits().any() && s.z_bits().any()) return false;
    return true;
}

std::vector<PauliOperator> StabiliserCode::x_stabilisers() const {
    if (!is_css()) throw PreconditionError("x_stabilisers: code is not CSS");
    std::vector<PauliOperator> out;
    for (const auto& s : stabilisers)
        if (s.x_bits().any()) out.push_back(s);
    return out;
}

std::vector<PauliOperator> StabiliserCode::z_stabilisers() const {
    if (!is_css()) throw PreconditionError("z_stabilisers: code is not CSS");
    std::vector<PauliOperator> out;
    for (const auto& s : stabilisers)
        if (s.z_bits().any()) out.push_back(s);
    return out;
}

nlohmann::json StabiliserCode::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["k"] = k;
    j["label"] = label;
    auto dump = [](const std::vector<PauliOperator>& ops) {
        std::vector<std::string> out;
        out.reserve(ops.size());
        for (const auto& p : ops) out.push_back(p.to_string());
        return out;
    };
    j["stabilisers"] = dump(stabilisers);
    j["logical_x"] = dump(logical_x);
    j["logical_z"] = dump(logical_z);
    return j;
}

StabiliserCode StabiliserCode::from_json(const nlohmann::json& j) {
    StabiliserCode c;
    try {
        c.n = j.at("n").get<std::size_t>();
        c.k = j.at("k").get<std::size_t>();
        c.label = j.value("label", std::string());
        auto load = [&](const char* key) {
            std::vector<PauliOperator> out;
            for (const auto& s : j.at(key)) out.push_back(PauliOperator::parse(s.get<std::string>(), c.n));
            return out;
        };
        c.stabilisers = load("stabilisers");
        c.logical_x = load("logical_x");
        c.logical_z = load("logical_z");
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad code JSON: ") + e.what());
    }
    c.validate();
    return c;
}

StabiliserCode StabiliserCode::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad JSON: ") + e.what());
    }
    return from_json(j);
}

GroupIndex::GroupIndex(StabiliserCode code) : code_(std::move(code)), stab_basis_(2 * code_.n, true) {
    for (const auto& s : code_.stabilisers)
        if (!stab_basis_.add(symplectic_row(s)))
            throw PreconditionError("GroupIndex: dependent stabiliser generators");
}

gf2::BitVec GroupIndex::syndrome(const PauliOperator& p) const {
    gf2::BitVec out(code_.stabilisers.size());
    for (std::size_t i = 0; i < code_.stabilisers.size(); ++i)
        if (!p.commutes_with(code_.stabilisers[i])) out.set(i);
    return out;
}

bool GroupIndex::in_normaliser(const PauliOperator& p) const { return syndrome(p).none(); }

std::optional<gf2::BitVec> GroupIndex::group_combination(const PauliOperator& p) const {
    return stab_basis_.combination_for(symplectic_row(p));
}

bool GroupIndex::in_group_up_to_phase(const PauliOperator& p) const {
    return group_combination(p).has_value();
}

bool GroupIndex::in_group_exact(const PauliOperator& p) const {
    auto combo = group_combination(p);
    if (!combo) return false;
    PauliOperator prod = PauliOperator::identity(code_.n);
    for (std::size_t i : combo->ones()) prod = prod * code_.stabilisers[i];
    return prod == p;
}

GroupIndex::LogicalClass GroupIndex::logical_class(const PauliOperator& p) const {
    LogicalClass cls{gf2::BitVec(code_.k), gf2::BitVec(code_.k)};
    for (std::size_t i = 0; i < code_.k; ++i) {
        if (!p.commutes_with(code_.logical_z[i])) cls.xbits.set(i);
        if (!p.commutes_with(code_.logical_x[i])) cls.zbits.set(i);
    }
    return cls;
}

PauliOperator GroupIndex::class_representative(const LogicalClass& cls) const {
    PauliOperator prod = PauliOperator::identity(code_.n);
    for (std::size_t i = 0; i < code_.k; ++i) {
        if (cls.xbits.get(i)) prod = prod * code_.logical_x[i];
        if (cls.zbits.get(i)) prod = prod * code_.logical_z[i];
    }
    return prod;
}

GroupIndex::ResidualKind GroupIndex::residual_kind(const PauliOperator& p) const {
    if (!in_normaliser(p)) return ResidualKind::detectable;
    if (logical_class(p).trivial()) return ResidualKind::trivial;
    return ResidualKind::logical;
}

std::string class_name(const GroupIndex::LogicalClass& cls, std::size_t k) {
    std::string out;
    for (std::size_t i = 0; i < k; ++i) {
        bool x = cls.xbits.get(i), z = cls.zbits.get(i);
        if (!x && !z) continue;
        out += (x && z) ? 'Y' : (x ? 'X' : 'Z');
        out += std::to_string(i + 1);
    }
    return out.empty() ? "I" : out;
}

} // namespace stabspread
