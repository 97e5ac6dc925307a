#pragma once

#include <stdexcept>
#include <string>

namespace goodred {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arithmetic could not certify a result at the working precision.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error("precision exhausted: " + msg) {}
};

// Division by an element with no certified term below its precision.
struct DivisionByApparentZero : Error {
    explicit DivisionByApparentZero(const std::string& msg)
        : Error("division by apparent zero: " + msg) {}
};

// Division by exact zero.
struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error("division by zero: " + msg) {}
};

struct OverflowError : Error {
    explicit OverflowError(const std::string& msg) : Error("integer overflow: " + msg) {}
};

// p | n root of a unit that is not exactly stored.
struct WildRootUnsupported : Error {
    explicit WildRootUnsupported(const std::string& msg)
        : Error("wild root unsupported: " + msg) {}
};

// Newton-Puiseux branch requires an inseparable / Artin-Schreier step.
struct WildBranchUnsupported : Error {
    explicit WildBranchUnsupported(const std::string& msg)
        : Error("wild branch unsupported: " + msg) {}
};

struct NegativeValuation : Error {
    explicit NegativeValuation(const std::string& msg) : Error("negative valuation: " + msg) {}
};

struct NotCoprime : Error {
    explicit NotCoprime(const std::string& msg) : Error("not coprime: " + msg) {}
};

// The reduction-degree test and the resultant test disagreed.
struct InconsistentCharacterizations : Error {
    explicit InconsistentCharacterizations(const std::string& msg)
        : Error("inconsistent characterizations: " + msg) {}
};

struct PoleInDisk : Error {
    explicit PoleInDisk(const std::string& msg) : Error("pole in disk: " + msg) {}
};

struct DegenerateTriple : Error {
    explicit DegenerateTriple(const std::string& msg) : Error("degenerate triple: " + msg) {}
};

struct NotFixed : Error {
    explicit NotFixed(const std::string& msg) : Error("not a fixed point: " + msg) {}
};

struct ModeMismatch : Error {
    explicit ModeMismatch(const std::string& msg) : Error("mode mismatch: " + msg) {}
};

// A constructed point failed a disk-membership postcondition; indicates a bug.
struct RootOutsideDisk : Error {
    explicit RootOutsideDisk(const std::string& msg) : Error("root outside disk: " + msg) {}
};

struct IterationBudgetExceeded : Error {
    explicit IterationBudgetExceeded(const std::string& msg)
        : Error("iteration budget exceeded: " + msg) {}
};

struct CaseInapplicable : Error {
    explicit CaseInapplicable(const std::string& msg) : Error("case inapplicable: " + msg) {}
};

struct LevelMismatch : Error {
    explicit LevelMismatch(const std::string& msg) : Error("level mismatch: " + msg) {}
};

struct UnsupportedField : Error {
    explicit UnsupportedField(const std::string& msg) : Error("unsupported field: " + msg) {}
};

struct ResidueFieldTooLarge : Error {
    explicit ResidueFieldTooLarge(const std::string& msg)
        : Error("residue field too large: " + msg) {}
};

struct SyntaxError : Error {
    size_t position;
    SyntaxError(const std::string& msg, size_t pos)
        : Error("syntax error at " + std::to_string(pos) + ": " + msg), position(pos) {}
};

// Internal invariant violated; always indicates a bug or an unproven situation.
struct InternalError : Error {
    explicit InternalError(const std::string& msg) : Error("internal error: " + msg) {}
};

}  // namespace goodred
