#pragma once

#include <stdexcept>
#include <string>

namespace qdx {

// Base class for everything thrown by the library. The CLI maps subtrees of
// this hierarchy onto exit codes: parse -> 1, capacity -> 2,
// verification -> 3, missing model -> 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- series ---------------------------------------------------------------
struct ZeroSeries : Error {
    ZeroSeries() : Error("zero series: pole order and degree at t=1 are undefined") {}
};

// --- capacity -------------------------------------------------------------
struct CapacityExceeded : Error {
    using Error::Error;
};
struct GroupTooLarge : CapacityExceeded {
    using CapacityExceeded::CapacityExceeded;
};

// --- monalg ---------------------------------------------------------------
struct ZeroModule : Error {
    ZeroModule() : Error("operation requires a nonzero module") {}
};
struct NotMinimalPrime : Error {
    using Error::Error;
};
struct Divergent : Error {
    using Error::Error;
};
struct NotArtinian : Error {
    using Error::Error;
};

// --- grpcat / wmod --------------------------------------------------------
struct CriterionMismatch : Error {
    using Error::Error;
};
struct InvariantViolation : Error {
    using Error::Error;
};

// --- assemble -------------------------------------------------------------
struct MissingModel : Error {
    using Error::Error;
};
struct MissingAlgebraicSide : Error {
    using Error::Error;
};

// --- parser ---------------------------------------------------------------
struct ParseError : Error {
    using Error::Error;
};
struct SyntaxError : ParseError {
    int line, col;
    SyntaxError(int line_, int col_, const std::string& what)
        : ParseError("syntax error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                     ": " + what),
          line(line_), col(col_) {}
};
struct DuplicateName : ParseError {
    using ParseError::ParseError;
};
struct UnknownReference : ParseError {
    using ParseError::ParseError;
};
struct BadPermutation : ParseError {
    using ParseError::ParseError;
};

} // namespace qdx
