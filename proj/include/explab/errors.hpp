#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace explab {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Bad user-supplied values (caught by the CLI and mapped to exit code 2).
struct ValidationError : Error {
    using Error::Error;
};

/// Work-size guards (exit code 3 in the CLI).
struct BudgetExceeded : Error {
    using Error::Error;
};

struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero in GF(p)") {}
};
struct FieldMismatch : Error {
    FieldMismatch() : Error("operands belong to different prime fields") {}
};
struct NotPrime : ValidationError {
    explicit NotPrime(const std::string& what) : ValidationError(what) {}
};

struct ArityMismatch : Error {
    ArityMismatch() : Error("polynomial arities differ") {}
};
struct ZeroDenominator : Error {
    ZeroDenominator() : Error("rational function with zero denominator") {}
};
struct ZeroPolynomial : Error {
    ZeroPolynomial() : Error("operation undefined for the zero polynomial") {}
};
struct ConstantPolynomial : Error {
    ConstantPolynomial() : Error("operation undefined for constant polynomials") {}
};
struct DenominatorNotInvertible : Error {
    explicit DenominatorNotInvertible(unsigned long long p)
        : Error("coefficient denominator vanishes mod " + std::to_string(p)) {}
};
struct DuplicateNode : Error {
    DuplicateNode() : Error("interpolation nodes are not distinct") {}
};
struct MultivariateGcd : Error {
    MultivariateGcd() : Error("internal logic error: multivariate gcd requested") {}
};

struct ProbeDegenerate : Error {
    ProbeDegenerate() : Error("no admissible probe point found (64 retries)") {}
};
struct SeparationFailed : Error {
    SeparationFailed()
        : Error("cross-multiplied separation identity is nonzero; determinant precondition violated") {}
};
struct ImproperFraction : Error {
    ImproperFraction() : Error("log-derivative solver requires a proper fraction") {}
};

struct EmptySet : Error {
    EmptySet() : Error("materialized subset is empty") {}
};
struct VertexOutOfRange : Error {
    VertexOutOfRange() : Error("vertex outside the declared vertex set") {}
};
struct ConvergenceFailure : Error {
    ConvergenceFailure() : Error("power iteration did not converge within 10^4 iterations") {}
};
struct DegreeTooLarge : Error {
    DegreeTooLarge() : Error("polynomial degree must stay below the characteristic") {}
};
struct NotIrreducible : Error {
    NotIrreducible() : Error("factor is reducible (or degree > 3 without irreducibility assertion)") {}
};
struct DegenerateInT : Error {
    DegenerateInT() : Error("polynomial does not involve the quantified variable t") {}
};

/// Parser errors carry a half-open source span [begin, end).
struct ParseError : ValidationError {
    std::size_t begin, end;
    ParseError(const std::string& what, std::size_t b, std::size_t e)
        : ValidationError(what + " at " + std::to_string(b) + ".." + std::to_string(e)), begin(b), end(e) {}
};
struct SyntaxError : ParseError {
    SyntaxError(const std::string& what, std::size_t b, std::size_t e) : ParseError(what, b, e) {}
};
struct UnknownVariable : ParseError {
    UnknownVariable(const std::string& name, std::size_t b, std::size_t e)
        : ParseError("unknown variable '" + name + "'", b, e) {}
};
struct NegativeExponent : ParseError {
    NegativeExponent(std::size_t b, std::size_t e) : ParseError("negative exponent", b, e) {}
};

}  // namespace explab
