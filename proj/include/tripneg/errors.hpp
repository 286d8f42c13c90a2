// errors.hpp — exception types shared by the library and the CLI

#pragma once

#include <stdexcept>
#include <string>

namespace tripneg {

// Bad user input: a parameter violates a type invariant. CLI exit code 1.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string key, const std::string& what)
        : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

// A solver or eigensolver could not reach its tolerance. CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be read or written. CLI exit code 3.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace tripneg
