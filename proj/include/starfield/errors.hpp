#pragma once

#include <stdexcept>
#include <string>

namespace starfield {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operands live over different mode spaces / mismatched matrix sizes.
struct DimensionError : Error {
    using Error::Error;
};

// Input outside an operation's domain (hbar terms where none are allowed,
// non-real Cauchy data, unresolvable mode label, ...).
struct DomainError : Error {
    using Error::Error;
};

// Bad runtime configuration (invalid KGConfig, quadrature/analytic mismatch,
// malformed config or pairing file).
struct ConfigError : Error {
    using Error::Error;
};

// Truncation guard refused a Fock comparison: Ncap too small for the
// combined formal degree.
struct GuardError : Error {
    using Error::Error;
};

// A built-in cross-check failed; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

// Syntax error with a byte offset into the source text.
struct ParseError : Error {
    std::size_t offset;
    ParseError(std::size_t off, const std::string& what)
        : Error(what + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

}  // namespace starfield
