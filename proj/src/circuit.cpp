#include "stabspread/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "stabspread/error.hpp"

namespace stabspread {

// ---------------------------------------------------------------------------
// Condition expressions
// ---------------------------------------------------------------------------

struct Condition::Node {
    enum Kind { Label, Const, Not, And, Xor, Or };
    Kind kind = Const;
    std::string label;
    bool value = false;
    std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Condition::Node>;

class ConditionParser {
  public:
    ConditionParser(const std::string& text, std::set<std::string>& labels)
        : text_(text), labels_(labels) {}

    NodePtr parse() {
        NodePtr root = parse_or();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("condition: unexpected character '" + std::string(1, text_[pos_]) +
                             "' at position " + std::to_string(pos_));
        return root;
    }

  private:
    const std::string& text_;
    std::set<std::string>& labels_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static NodePtr binary(Condition::Node::Kind kind, NodePtr a, NodePtr b) {
        auto node = std::make_shared<Condition::Node>();
        node->kind = kind;
        node->a = std::move(a);
        node->b = std::move(b);
        return node;
    }

    NodePtr parse_or() {
        NodePtr lhs = parse_xor();
        while (eat('|')) lhs = binary(Condition::Node::Or, lhs, parse_xor());
        return lhs;
    }
    NodePtr parse_xor() {
        NodePtr lhs = parse_and();
        while (eat('^')) lhs = binary(Condition::Node::Xor, lhs, parse_and());
        return lhs;
    }
    NodePtr parse_and() {
        NodePtr lhs = parse_unary();
        while (eat('&')) lhs = binary(Condition::Node::And, lhs, parse_unary());
        return lhs;
    }

    NodePtr parse_unary() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("condition: unexpected end of expression");
        char c = text_[pos_];
        if (c == '!') {
            ++pos_;
            auto node = std::make_shared<Condition::Node>();
            node->kind = Condition::Node::Not;
            node->a = parse_unary();
            return node;
        }
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_or();
            if (!eat(')')) throw ParseError("condition: missing ')'");
            return inner;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            auto node = std::make_shared<Condition::Node>();
            node->kind = Condition::Node::Const;
            node->value = (c == '1');
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            auto node = std::make_shared<Condition::Node>();
            node->kind = Condition::Node::Label;
            node->label = text_.substr(start, pos_ - start);
            labels_.insert(node->label);
            return node;
        }
        throw ParseError("condition: unexpected character '" + std::string(1, c) + "'");
    }
};

bool eval_node(const Condition::Node& node, const std::map<std::string, bool>& outcomes) {
    switch (node.kind) {
    case Condition::Node::Const: return node.value;
    case Condition::Node::Label: {
        auto it = outcomes.find(node.label);
        if (it == outcomes.end())
            throw PreconditionError("condition: outcome '" + node.label + "' is not defined");
        return it->second;
    }
    case Condition::Node::Not: return !eval_node(*node.a, outcomes);
    case Condition::Node::And: return eval_node(*node.a, outcomes) && eval_node(*node.b, outcomes);
    case Condition::Node::Xor: return eval_node(*node.a, outcomes) != eval_node(*node.b, outcomes);
    case Condition::Node::Or: return eval_node(*node.a, outcomes) || eval_node(*node.b, outcomes);
    }
    throw InvariantError("condition: corrupt expression node");
}

} // namespace

Condition Condition::parse(const std::string& text) {
    Condition cond;
    cond.text_ = text;
    ConditionParser parser(text, cond.labels_);
    cond.root_ = parser.parse();
    return cond;
}

bool Condition::evaluate(const std::map<std::string, bool>& outcomes) const {
    if (!root_) throw PreconditionError("condition: empty expression");
    return eval_node(*root_, outcomes);
}

// ---------------------------------------------------------------------------
// Gates
// ---------------------------------------------------------------------------

namespace {

std::size_t gate_arity(const std::string& name) {
    if (name == "H" || name == "S" || name == "SDG" || name == "X" || name == "Y" || name == "Z")
        return 1;
    if (name == "CNOT" || name == "CZ" || name == "SWAP") return 2;
    throw ParseError("unknown gate '" + name + "'");
}

void check_gate(const CliffordGate& g, std::size_t n) {
    std::size_t arity = gate_arity(g.name);
    if (g.targets.size() != arity)
        throw PreconditionError("gate " + g.name + " expects " + std::to_string(arity) +
                                " target(s), got " + std::to_string(g.targets.size()));
    for (std::size_t q : g.targets)
        if (q >= n)
            throw PreconditionError("gate " + g.name + ": target " + std::to_string(q + 1) +
                                    " outside register of size " + std::to_string(n));
    if (arity == 2 && g.targets[0] == g.targets[1])
        throw PreconditionError("gate " + g.name + ": targets must be distinct");
}

} // namespace

clifford::CliffordMap gate_map(const CliffordGate& g, std::size_t n) {
    using clifford::CliffordMap;
    check_gate(g, n);
    if (g.name == "H") return CliffordMap::hadamard(n, g.targets[0]);
    if (g.name == "S") return CliffordMap::phase_s(n, g.targets[0]);
    if (g.name == "SDG") return CliffordMap::phase_sdg(n, g.targets[0]);
    if (g.name == "X") return CliffordMap::pauli_x(n, g.targets[0]);
    if (g.name == "Y") return CliffordMap::pauli_y(n, g.targets[0]);
    if (g.name == "Z") return CliffordMap::pauli_z(n, g.targets[0]);
    if (g.name == "CNOT") return CliffordMap::cnot(n, g.targets[0], g.targets[1]);
    if (g.name == "CZ") return CliffordMap::cz(n, g.targets[0], g.targets[1]);
    if (g.name == "SWAP") return CliffordMap::swap(n, g.targets[0], g.targets[1]);
    throw ParseError("unknown gate '" + g.name + "'");
}

// ---------------------------------------------------------------------------
// Circuit construction
// ---------------------------------------------------------------------------

Circuit& Circuit::gate(const std::string& name, std::vector<std::size_t> targets) {
    CliffordGate g{name, std::move(targets)};
    check_gate(g, n);
    ops.push_back(std::move(g));
    return *this;
}

Circuit& Circuit::t(std::size_t q) {
    if (q >= n) throw PreconditionError("t: target outside register");
    ops.push_back(TGate{q, false});
    return *this;
}

Circuit& Circuit::tdg(std::size_t q) {
    if (q >= n) throw PreconditionError("tdg: target outside register");
    ops.push_back(TGate{q, true});
    return *this;
}

Circuit& Circuit::measure(char basis, std::size_t q, const std::string& label) {
    if (basis != 'X' && basis != 'Z')
        throw PreconditionError("measure: basis must be 'X' or 'Z'");
    if (q >= n) throw PreconditionError("measure: target outside register");
    if (label.empty()) throw PreconditionError("measure: outcome label must be non-empty");
    ops.push_back(Measure{basis, q, label});
    return *this;
}

Circuit& Circuit::cpauli(const std::string& condition, const PauliOperator& p) {
    if (p.num_qubits() != n)
        throw PreconditionError("cpauli: pauli acts on " + std::to_string(p.num_qubits()) +
                                " qubits, circuit has " + std::to_string(n));
    ops.push_back(ControlledPauli{Condition::parse(condition), p});
    return *this;
}

Circuit& Circuit::cgate(const std::string& condition, const std::string& name,
                        std::vector<std::size_t> targets) {
    CliffordGate g{name, std::move(targets)};
    check_gate(g, n);
    ops.push_back(ControlledGate{Condition::parse(condition), std::move(g)});
    return *this;
}

Circuit& Circuit::append(const Circuit& other) {
    if (other.n != n) throw PreconditionError("append: register sizes differ");
    ops.insert(ops.end(), other.ops.begin(), other.ops.end());
    return *this;
}

void Circuit::validate() const {
    std::set<std::string> defined;
    for (const auto& op : ops) {
        if (const auto* g = std::get_if<CliffordGate>(&op)) {
            check_gate(*g, n);
        } else if (const auto* tg = std::get_if<TGate>(&op)) {
            if (tg->target >= n) throw PreconditionError("t gate target outside register");
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            if (m->basis != 'X' && m->basis != 'Z')
                throw PreconditionError("measure basis must be 'X' or 'Z'");
            if (m->target >= n) throw PreconditionError("measure target outside register");
            if (m->outcome_label.empty()) throw PreconditionError("measure label is empty");
            if (!defined.insert(m->outcome_label).second)
                throw PreconditionError("outcome label '" + m->outcome_label +
                                        "' defined more than once");
        } else if (const auto* cp = std::get_if<ControlledPauli>(&op)) {
            if (cp->pauli.num_qubits() != n)
                throw PreconditionError("controlled pauli register size mismatch");
            for (const auto& label : cp->condition.labels())
                if (!defined.count(label))
                    throw PreconditionError("condition uses outcome '" + label +
                                            "' before it is measured");
        } else if (const auto* cg = std::get_if<ControlledGate>(&op)) {
            check_gate(cg->gate, n);
            for (const auto& label : cg->condition.labels())
                if (!defined.count(label))
                    throw PreconditionError("condition uses outcome '" + label +
                                            "' before it is measured");
        }
    }
}

bool Circuit::has_measurement() const {
    return std::any_of(ops.begin(), ops.end(),
                       [](const CircuitOp& op) { return std::holds_alternative<Measure>(op); });
}

bool Circuit::has_t() const {
    return std::any_of(ops.begin(), ops.end(),
                       [](const CircuitOp& op) { return std::holds_alternative<TGate>(op); });
}

std::size_t Circuit::count_gate(const std::string& name) const {
    std::size_t total = 0;
    for (const auto& op : ops)
        if (const auto* g = std::get_if<CliffordGate>(&op))
            if (g->name == name) ++total;
    return total;
}

clifford::CliffordMap Circuit::to_clifford_map() const {
    auto map = clifford::CliffordMap::identity(n);
    for (const auto& op : ops) {
        if (const auto* g = std::get_if<CliffordGate>(&op)) {
            map = gate_map(*g, n).compose_after(map);
        } else if (std::holds_alternative<TGate>(op)) {
            throw PreconditionError("to_clifford_map: circuit contains a T gate");
        } else {
            throw PreconditionError(
                "to_clifford_map: circuit contains measurements or conditioned operations");
        }
    }
    return map;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

std::string Circuit::to_text() const {
    std::ostringstream out;
    out << "N " << n << '\n';
    for (const auto& op : ops) {
        if (const auto* g = std::get_if<CliffordGate>(&op)) {
            out << g->name;
            for (std::size_t q : g->targets) out << ' ' << (q + 1);
            out << '\n';
        } else if (const auto* tg = std::get_if<TGate>(&op)) {
            out << (tg->dagger ? "TDG " : "T ") << (tg->target + 1) << '\n';
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            out << "MEASURE " << m->basis << ' ' << (m->target + 1) << ' ' << m->outcome_label
                << '\n';
        } else if (const auto* cp = std::get_if<ControlledPauli>(&op)) {
            out << "CPAULI " << cp->condition.text() << ' ' << cp->pauli.to_string() << '\n';
        } else if (const auto* cg = std::get_if<ControlledGate>(&op)) {
            out << "CGATE " << cg->condition.text() << ' ' << cg->gate.name;
            for (std::size_t q : cg->gate.targets) out << ' ' << (q + 1);
            out << '\n';
        }
    }
    return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::size_t parse_target(const std::string& tok, std::size_t n, std::size_t line_no) {
    std::size_t value = 0;
    try {
        value = std::stoul(tok);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected qubit index, got '" +
                         tok + "'");
    }
    if (value == 0 || value > n)
        throw ParseError("line " + std::to_string(line_no) + ": qubit index " + tok +
                         " outside 1.." + std::to_string(n));
    return value - 1;
}

} // namespace

Circuit Circuit::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    Circuit c;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks[0] != "N" || toks.size() != 2)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header 'N <qubits>'");
            try {
                c.n = std::stoul(toks[1]);
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line_no) + ": bad qubit count");
            }
            if (c.n == 0) throw ParseError("circuit must have at least one qubit");
            have_header = true;
            continue;
        }
        const std::string& kw = toks[0];
        if (kw == "T" || kw == "TDG") {
            if (toks.size() != 2)
                throw ParseError("line " + std::to_string(line_no) + ": " + kw +
                                 " expects one target");
            std::size_t q = parse_target(toks[1], c.n, line_no);
            if (kw == "T")
                c.t(q);
            else
                c.tdg(q);
        } else if (kw == "MEASURE") {
            if (toks.size() != 4 || toks[1].size() != 1)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'MEASURE <X|Z> <qubit> <label>'");
            c.measure(toks[1][0], parse_target(toks[2], c.n, line_no), toks[3]);
        } else if (kw == "CPAULI") {
            if (toks.size() < 3)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'CPAULI <condition> <pauli>'");
            std::string pauli_text;
            for (std::size_t i = 2; i < toks.size(); ++i) {
                if (i > 2) pauli_text += ' ';
                pauli_text += toks[i];
            }
            c.cpauli(toks[1], PauliOperator::parse(pauli_text, c.n));
        } else if (kw == "CGATE") {
            if (toks.size() < 3)
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected 'CGATE <condition> <gate> <targets>'");
            std::vector<std::size_t> targets;
            for (std::size_t i = 3; i < toks.size(); ++i)
                targets.push_back(parse_target(toks[i], c.n, line_no));
            c.cgate(toks[1], toks[2], std::move(targets));
        } else {
            std::vector<std::size_t> targets;
            for (std::size_t i = 1; i < toks.size(); ++i)
                targets.push_back(parse_target(toks[i], c.n, line_no));
            try {
                c.gate(kw, std::move(targets));
            } catch (const Error& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    if (!have_header) throw ParseError("circuit text is empty");
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

nlohmann::json Circuit::to_json() const {
    nlohmann::json ops_json = nlohmann::json::array();
    for (const auto& op : ops) {
        nlohmann::json j;
        if (const auto* g = std::get_if<CliffordGate>(&op)) {
            j["type"] = "gate";
            j["name"] = g->name;
            nlohmann::json targets = nlohmann::json::array();
            for (std::size_t q : g->targets) targets.push_back(q + 1);
            j["targets"] = targets;
        } else if (const auto* tg = std::get_if<TGate>(&op)) {
            j["type"] = "t";
            j["target"] = tg->target + 1;
            j["dagger"] = tg->dagger;
        } else if (const auto* m = std::get_if<Measure>(&op)) {
            j["type"] = "measure";
            j["basis"] = std::string(1, m->basis);
            j["target"] = m->target + 1;
            j["label"] = m->outcome_label;
        } else if (const auto* cp = std::get_if<ControlledPauli>(&op)) {
            j["type"] = "cpauli";
            j["condition"] = cp->condition.text();
            j["pauli"] = cp->pauli.to_string();
        } else if (const auto* cg = std::get_if<ControlledGate>(&op)) {
            j["type"] = "cgate";
            j["condition"] = cg->condition.text();
            j["name"] = cg->gate.name;
            nlohmann::json targets = nlohmann::json::array();
            for (std::size_t q : cg->gate.targets) targets.push_back(q + 1);
            j["targets"] = targets;
        }
        ops_json.push_back(std::move(j));
    }
    return nlohmann::json{{"n", n}, {"ops", std::move(ops_json)}};
}

Circuit Circuit::from_json(const nlohmann::json& j) {
    Circuit c;
    c.n = j.at("n").get<std::size_t>();
    if (c.n == 0) throw ParseError("circuit must have at least one qubit");
    auto target_of = [&](const nlohmann::json& v) {
        std::size_t q = v.get<std::size_t>();
        if (q == 0 || q > c.n) throw ParseError("qubit index outside register");
        return q - 1;
    };
    for (const auto& op : j.at("ops")) {
        const std::string type = op.at("type").get<std::string>();
        if (type == "gate") {
            std::vector<std::size_t> targets;
            for (const auto& v : op.at("targets")) targets.push_back(target_of(v));
            c.gate(op.at("name").get<std::string>(), std::move(targets));
        } else if (type == "t") {
            bool dagger = op.value("dagger", false);
            if (dagger)
                c.tdg(target_of(op.at("target")));
            else
                c.t(target_of(op.at("target")));
        } else if (type == "measure") {
            const std::string basis = op.at("basis").get<std::string>();
            if (basis.size() != 1) throw ParseError("measure basis must be 'X' or 'Z'");
            c.measure(basis[0], target_of(op.at("target")), op.at("label").get<std::string>());
        } else if (type == "cpauli") {
            c.cpauli(op.at("condition").get<std::string>(),
                     PauliOperator::parse(op.at("pauli").get<std::string>(), c.n));
        } else if (type == "cgate") {
            std::vector<std::size_t> targets;
            for (const auto& v : op.at("targets")) targets.push_back(target_of(v));
            c.cgate(op.at("condition").get<std::string>(), op.at("name").get<std::string>(),
                    std::move(targets));
        } else {
            throw ParseError("unknown circuit op type '" + type + "'");
        }
    }
    c.validate();
    return c;
}

} // namespace stabspread
