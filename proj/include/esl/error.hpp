#pragma once

#include <stdexcept>
#include <string>

namespace esl {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (point outside D, bad grid, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The computation itself failed: degenerate basis, overflow, a tabulated
/// function queried off its table, a non-finite defect.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace esl
