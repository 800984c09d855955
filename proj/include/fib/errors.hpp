#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fib {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotDivisible : Error {
    NotDivisible() : Error("exact division has a nonzero remainder") {}
};

struct NotAUnit : Error {
    NotAUnit() : Error("element is not a unit of Z[tau]") {}
};

struct NotAResidue : Error {
    NotAResidue() : Error("radicand is not a quadratic residue") {}
};

struct FormViolation : Error {
    FormViolation() : Error("matrix left the exact unitary form") {}
};

struct NoTerminalForm : Error {
    NoTerminalForm() : Error("no terminal w^k T^j form matches") {}
};

struct DegenerateRegion : Error {
    DegenerateRegion() : Error("sampling region too coarse (N <= 2)") {}
};

struct TrialLimitExceeded : Error {
    TrialLimitExceeded() : Error("trial cap reached without an easy instance") {}
};

struct BudgetExceeded : Error {
    BudgetExceeded() : Error("database depth exceeds the configured budget") {}
};

struct NotUnitary : Error {
    NotUnitary() : Error("input matrix is not unitary at working precision") {}
};

/// Parse failure carrying the offset of the offending character.
struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t pos)
        : Error(what + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

}  // namespace fib
