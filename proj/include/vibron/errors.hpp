#ifndef VIBRON_ERRORS_HPP
#define VIBRON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vibron {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad quantum numbers, out-of-range control parameters, schema violations.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Two eigenvalues coincide where a simple spectrum is required
/// (QFS denominators, SO(3) relabeling, Hellmann-Feynman derivatives).
class DegenerateSpectrum : public Error {
public:
    using Error::Error;
};

/// Eigensolver failed to converge (not expected at these dimensions).
class ConvergenceFailure : public Error {
public:
    using Error::Error;
};

/// Normal equations of the least-squares step are rank deficient,
/// usually a redundant parameter set.
class SingularNormalEquations : public Error {
public:
    using Error::Error;
};

/// A peak search was requested on a curve with no usable variation.
class FlatCurve : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; line() is the 1-based offending line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line) : Error(what), line_(line) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

} // namespace vibron

#endif
