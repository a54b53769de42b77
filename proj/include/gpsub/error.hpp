#pragma once

#include <stdexcept>
#include <string>

namespace gpsub {

// Base class for all library errors. CLI maps these to exit code 1
// (bad input) while verification failures use exit code 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

struct DivisionByZeroError : Error {
    DivisionByZeroError() : Error("division by zero") {}
};

// Exponent denominator does not divide the ambient cyclotomic order.
struct IncompatibleOrderError : Error {
    explicit IncompatibleOrderError(const std::string& msg)
        : Error("incompatible cyclotomic order: " + msg) {}
};

// Lattice data violates a structural constraint (symmetry, eta diagonal, ...).
struct ConstraintError : Error {
    explicit ConstraintError(const std::string& msg)
        : Error("constraint violation: " + msg) {}
};

struct SingularGramError : Error {
    SingularGramError() : Error("gram matrix is singular") {}
};

// A rewriting step still produced a non-discarded term at the J_max cap.
struct StraighteningCapError : Error {
    explicit StraighteningCapError(const std::string& msg)
        : Error("straightening cap exceeded: " + msg) {}
};

}  // namespace gpsub
