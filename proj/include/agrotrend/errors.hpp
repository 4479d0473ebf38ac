#pragma once

#include <stdexcept>
#include <string>

namespace agrotrend {

// Error taxonomy mapped to CLI exit codes: validation 2, numerical 3, I/O 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invariant or precondition violations in data (exit 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerical failures: rank deficiency, unreachable solver targets (exit 3).
class NumericError : public Error {
public:
    using Error::Error;
};

// Missing/unreadable files and serialization problems (exit 4).
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed file content; messages cite file and line (exit 4).
class ParseError : public IoError {
public:
    using IoError::IoError;
};

} // namespace agrotrend
