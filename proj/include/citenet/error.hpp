#pragma once

#include <stdexcept>
#include <string>

namespace citenet {

/// Base class for every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// Input violates a precondition (bad parameters, mismatched partition, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A stage produced nothing to work with: no seed matches, an empty graph,
/// no reachable pairs. The CLI maps these to exit code 2.
class EmptyResult : public Error {
public:
    using Error::Error;
};

/// Power iteration did not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace citenet
