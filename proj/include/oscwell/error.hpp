#pragma once

#include <stdexcept>
#include <string>

namespace oscwell {

/// Category used by the command-line front end to pick an exit code.
enum class ErrorKind {
    config = 2,     // malformed or out-of-range configuration
    numerical = 3,  // solver, quadrature or fit failure
    io = 4,         // file could not be read or written
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace oscwell
