#pragma once

#include <stdexcept>
#include <string>

namespace stabspread {

// Root of the project exception hierarchy. Everything thrown on purpose by
// this library derives from Error, so callers can catch one type.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad Pauli text, bad circuit text, bad JSON, bad sizes.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A precondition on an operation was violated (wrong qubit count, size out of
// the supported range, non-CSS code where CSS is required, ...).
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

// An internal consistency check failed (a constructed object does not satisfy
// its own invariants). Indicates a bug, not bad user input.
class InvariantError : public Error {
public:
    explicit InvariantError(const std::string& msg) : Error(msg) {}
};

// A bounded search or derivation ran out of budget without an answer.
class BudgetError : public Error {
public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

} // namespace stabspread
