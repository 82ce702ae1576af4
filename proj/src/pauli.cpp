#include "stabspread/pauli.hpp"

#include <cctype>
#include <sstream>

#include "stabspread/error.hpp"

namespace stabspread::pauli {

PauliOperator::PauliOperator(std::size_t n, BitVec x, BitVec z, std::uint8_t phase)
    : n_(n), x_(std::move(x)), z_(std::move(z)), phase_(phase & 3) {
    if (x_.size() != n_ || z_.size() != n_)
        throw PreconditionError("PauliOperator: bit vector width mismatch");
}

PauliOperator PauliOperator::single(std::size_t n, std::size_t q, char letter) {
    PauliOperator p(n);
    p.set_letter(q, letter);
    return p;
}

char PauliOperator::letter_at(std::size_t q) const {
    bool x = x_.get(q), z = z_.get(q);
    if (x && z) return 'Y';
    if (x) return 'X';
    if (z) return 'Z';
    return 'I';
}

void PauliOperator::set_letter(std::size_t q, char letter) {
    if (q >= n_) throw PreconditionError("PauliOperator::set_letter: qubit out of range");
    if (letter_at(q) == 'Y') phase_ = (phase_ + 3) & 3;
    x_.set(q, false);
    z_.set(q, false);
    switch (letter) {
        case 'I': break;
        case 'X': x_.set(q); break;
        case 'Z': z_.set(q); break;
        case 'Y': x_.set(q); z_.set(q); phase_ = (phase_ + 1) & 3; break;
        default: throw ParseError(std::string("unknown Pauli letter '") + letter + "'");
    }
}

PauliOperator PauliOperator::operator*(const PauliOperator& rhs) const {
    if (n_ != rhs.n_) throw PreconditionError("Pauli product: qubit count mismatch");
    PauliOperator out(n_);
    out.x_ = x_ ^ rhs.x_;
    out.z_ = z_ ^ rhs.z_;
    // Z^za X^xb = (-1)^{za.xb} X^xb Z^za
    std::uint8_t ph = (phase_ + rhs.phase_) & 3;
    if (z_.parity_and(rhs.x_)) ph = (ph + 2) & 3;
    out.phase_ = ph;
    return out;
}

PauliOperator PauliOperator::adjoint() const {
    PauliOperator out = *this;
    std::uint8_t ph = (4 - phase_) & 3;
    if (x_.parity_and(z_)) ph = (ph + 2) & 3;
    out.phase_ = ph;
    return out;
}

PauliOperator PauliOperator::inverse() const { return adjoint(); }

bool PauliOperator::commutes_with(const PauliOperator& o) const {
    return x_.parity_and(o.z_) == z_.parity_and(o.x_);
}

bool PauliOperator::is_hermitian() const {
    return ((phase_ & 1) != 0) == x_.parity_and(z_);
}

std::string PauliOperator::phase_prefix() const {
    std::uint8_t shown = (phase_ + 4 - (x_.count_and(z_) & 3)) & 3;
    static const char* names[4] = {"+", "i", "-", "-i"};
    return names[shown];
}

std::string PauliOperator::to_string() const {
    std::ostringstream os;
    os << phase_prefix();
    bool empty = true;
    for (std::size_t q = 0; q < n_; ++q) {
        char l = letter_at(q);
        if (l == 'I') continue;
        os << ' ' << l << (q + 1);
        empty = false;
    }
    if (empty) os << " I";
    return os.str();
}

std::string PauliOperator::to_dense_string() const {
    std::string s = phase_prefix();
    if (s == "+") s.clear();
    for (std::size_t q = 0; q < n_; ++q) s += letter_at(q);
    return s;
}

PauliOperator PauliOperator::embed(std::size_t big_n, std::size_t offset) const {
    if (offset + n_ > big_n) throw PreconditionError("PauliOperator::embed: out of range");
    PauliOperator out(big_n);
    for (std::size_t q : x_.ones()) out.x_.set(offset + q);
    for (std::size_t q : z_.ones()) out.z_.set(offset + q);
    out.phase_ = phase_;
    return out;
}

std::size_t PauliOperator::hash() const {
    std::size_t h = x_.hash();
    h = h * 31 + z_.hash();
    return h * 31 + phase_;
}

PauliOperator PauliOperator::parse(const std::string& text, std::size_t n) {
    // Whitespace is insignificant: "X1 Z3", "X1Z3", "-Z5" and "- Z5" all parse.
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ParseError("empty Pauli text");

    auto fail = [&](std::size_t pos, const std::string& what) -> void {
        throw ParseError("Pauli parse error at position " + std::to_string(pos) + ": " +
                         what + " in \"" + s + "\"");
    };

    std::size_t pos = 0;
    std::uint8_t extra_phase = 0;
    if (s[pos] == '+') { ++pos; }
    else if (s[pos] == '-') { extra_phase = 2; ++pos; }
    if (pos < s.size() && s[pos] == 'i') { extra_phase = (extra_phase + 1) & 3; ++pos; }
    if (pos == s.size()) fail(pos, "phase with no body");

    bool has_digit = false;
    for (std::size_t i = pos; i < s.size(); ++i)
        if (std::isdigit(static_cast<unsigned char>(s[i]))) { has_digit = true; break; }

    if (!has_digit) {
        // Dense letter string, qubit 1 first.
        std::string body = s.substr(pos);
        std::size_t nn = n == 0 ? body.size() : n;
        if (body.size() > nn) fail(pos, "dense string longer than qubit count");
        PauliOperator p(nn);
        for (std::size_t q = 0; q < body.size(); ++q) {
            char c = body[q];
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
                fail(pos + q, std::string("unexpected character '") + c + "'");
            p.set_letter(q, c);
        }
        p.multiply_phase(extra_phase);
        return p;
    }

    // Sparse form: (letter, 1-based index) groups, e.g. X1Z13 or "Y2 X5".
    struct Item { char letter; std::size_t q; };
    std::vector<Item> items;
    std::size_t max_q = 0;
    while (pos < s.size()) {
        char c = s[pos];
        if (c != 'X' && c != 'Y' && c != 'Z')
            fail(pos, std::string("expected X, Y or Z, got '") + c + "'");
        std::size_t dstart = ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == dstart) fail(pos, "expected qubit index");
        std::size_t q = std::stoul(s.substr(dstart, pos - dstart));
        if (q == 0) fail(dstart, "qubit indices are 1-based");
        items.push_back({c, q - 1});
        max_q = std::max(max_q, q);
    }
    std::size_t nn = n == 0 ? max_q : n;
    if (max_q > nn) fail(0, "qubit index exceeds qubit count");
    PauliOperator p(nn);
    for (const auto& it : items) {
        if (p.letter_at(it.q) != 'I') fail(0, "repeated qubit index " + std::to_string(it.q + 1));
        p.set_letter(it.q, it.letter);
    }
    p.multiply_phase(extra_phase);
    return p;
}

bool witness_less(const PauliOperator& a, const PauliOperator& b) {
    std::size_t wa = a.weight(), wb = b.weight();
    if (wa != wb) return wa < wb;
    int c = a.support().compare_support(b.support());
    if (c != 0) return c < 0;
    std::string da, db;
    for (std::size_t q = 0; q < a.num_qubits(); ++q) da += a.letter_at(q);
    for (std::size_t q = 0; q < b.num_qubits(); ++q) db += b.letter_at(q);
    if (da != db) return da < db;
    return a.phase() < b.phase();
}

BitVec symplectic_row(const PauliOperator& p) {
    std::size_t n = p.num_qubits();
    BitVec row(2 * n);
    for (std::size_t q : p.x_bits().ones()) row.set(q);
    for (std::size_t q : p.z_bits().ones()) row.set(n + q);
    return row;
}

PauliOperator from_symplectic_row(const BitVec& row, std::uint8_t phase) {
    if (row.size() % 2 != 0) throw PreconditionError("symplectic row must have even width");
    std::size_t n = row.size() / 2;
    BitVec x(n), z(n);
    for (std::size_t i : row.ones()) {
        if (i < n) x.set(i); else z.set(i - n);
    }
    return PauliOperator(n, x, z, phase);
}

} // namespace stabspread::pauli
