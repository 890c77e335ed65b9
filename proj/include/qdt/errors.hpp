#pragma once

#include <stdexcept>
#include <string>

namespace qdt {

/// Broad failure class. The numeric value is the CLI exit code.
enum class ErrorKind : int {
    Parse = 1,
    Validation = 2,
    Numeric = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

struct DimensionMismatch : ValidationError {
    explicit DimensionMismatch(const std::string& what) : ValidationError("dimension mismatch: " + what) {}
};

struct NotHermitian : ValidationError {
    explicit NotHermitian(const std::string& what) : ValidationError("not Hermitian: " + what) {}
};

struct IndexOutOfRange : ValidationError {
    explicit IndexOutOfRange(const std::string& what) : ValidationError("index out of range: " + what) {}
};

struct NonOrthogonalEvents : ValidationError {
    explicit NonOrthogonalEvents(const std::string& what) : ValidationError("non-orthogonal events: " + what) {}
};

struct ZeroAmplitude : ValidationError {
    ZeroAmplitude() : ValidationError("uncertain event has no nonzero amplitude") {}
};

struct DuplicateEvent : ValidationError {
    explicit DuplicateEvent(const std::string& what) : ValidationError("duplicate event: " + what) {}
};

struct IncompleteLattice : ValidationError {
    explicit IncompleteLattice(const std::string& what) : ValidationError("incomplete lattice: " + what) {}
};

struct EmptyLattice : ValidationError {
    EmptyLattice() : ValidationError("prospect lattice is empty") {}
};

struct InvalidState : ValidationError {
    explicit InvalidState(const std::string& what) : ValidationError("invalid statistical state: " + what) {}
};

struct DegeneracyNotLifted : NumericError {
    explicit DegeneracyNotLifted(const std::string& what) : NumericError("degeneracy not lifted: " + what) {}
};

struct NoConvergence : NumericError {
    explicit NoConvergence(const std::string& what) : NumericError("no convergence: " + what) {}
};

struct DegenerateNormalization : NumericError {
    explicit DegenerateNormalization(const std::string& what)
        : NumericError("degenerate normalization: " + what) {}
};

}  // namespace qdt
