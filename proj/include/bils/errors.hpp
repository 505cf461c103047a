#pragma once

#include <stdexcept>
#include <string>

namespace bils {

/// Base class for all recoverable runtime failures in the library.
/// Each subclass carries a stable short name used by the CLI when
/// reporting exit-code-1 errors.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// A Householder pivot fell below the rank threshold.
class RankDeficientError : public Error {
public:
    explicit RankDeficientError(const std::string& what)
        : Error("RankDeficient", what) {}
};

/// Box cardinality guard tripped (brute force / enumeration ops).
class BoxTooLargeError : public Error {
public:
    explicit BoxTooLargeError(const std::string& what)
        : Error("BoxTooLarge", what) {}
};

/// Quadrature dimension guard tripped (n > 4).
class DimensionTooLargeError : public Error {
public:
    explicit DimensionTooLargeError(const std::string& what)
        : Error("DimensionTooLarge", what) {}
};

/// Sweep would exceed the documented detector-call budget.
class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& what)
        : Error("BudgetExceeded", what) {}
};

/// Malformed text input (matrix / vector / box / instance files).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what)
        : Error("Format", what) {}
};

/// Two internal computation routes that must agree did not.
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& what)
        : Error("Consistency", what) {}
};

} // namespace bils
