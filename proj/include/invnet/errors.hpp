#pragma once

#include <stdexcept>
#include <string>

namespace invnet {

// Raised on malformed documents and invariant violations; the message names
// the offending field and index.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a numerical kernel cannot produce a meaningful result
// (singular matrix, overflow, non-finite state).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a structured fast path breaks down (zero continuant, singular
// inner block). Callers may fall back to the dense route.
class BreakdownError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace invnet
