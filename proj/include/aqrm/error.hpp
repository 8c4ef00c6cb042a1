// error.hpp: exception types thrown by the aqrm core.
//
// The C API (aqrm.h) maps each type onto a status code; inside C++ callers
// catch them as ordinary std exceptions.

#pragma once

#include <stdexcept>
#include <string>

namespace aqrm {

/// Invalid physical parameters, truncation or scan configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Eigensolver gave up before meeting its residual target.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double achieved_residual)
        : std::runtime_error(what), residual_(achieved_residual) {}

    double achieved_residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// File could not be opened, written or parsed.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace aqrm
