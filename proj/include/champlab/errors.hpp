#pragma once

#include <stdexcept>
#include <string>

namespace champlab {

/// Precondition on a mathematical argument was violated (exit code 2).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured resource budget (sieve limit, big-integer size, ladder
/// extent) would be exceeded (exit code 3).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Reading or writing a file failed (exit code 4).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace champlab
