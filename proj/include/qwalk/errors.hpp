#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A parameter lies outside the domain of a model or formula.
class DomainError : public Error {
public:
    using Error::Error;
};

/// apply_step was handed a state with nonzero amplitude on a boundary site.
class WindowOverflow : public Error {
public:
    using Error::Error;
};

/// A closed-form denominator vanished (below 1e-12 in modulus).
class SingularDenominator : public Error {
public:
    using Error::Error;
};

/// Neither square-root branch produced a unimodular eigenvalue.
class BranchResolutionFailed : public Error {
public:
    using Error::Error;
};

/// Coin with a ~ 0: the transfer form of the eigen-equation does not exist.
class DegenerateCoin : public Error {
public:
    using Error::Error;
};

/// Both transfer eigenvalues sit on the unit circle (lambda is in the band).
class NoContraction : public Error {
public:
    using Error::Error;
};

/// Parse failure of a textual input (model spec, angle expression, ...).
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace qwalk
