#pragma once

#include <stdexcept>
#include <string>

namespace opnorm {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values (exponents out of range, bad ensemble parameters, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(what) {}
};

// Vector/matrix dimension mismatch.
struct DimensionError : Error {
    explicit DimensionError(const std::string& what) : Error(what) {}
};

// Input file or config could not be parsed.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// A^T A is reducible; carries a human-readable witness description.
struct ReducibleError : Error {
    explicit ReducibleError(const std::string& what) : Error(what) {}
};

// Zero matrix or zero iterate: the normalized maximizer does not exist.
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& what) : Error(what) {}
};

// Iteration budget exhausted before reaching tolerance.
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

}  // namespace opnorm
