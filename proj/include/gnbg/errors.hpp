#pragma once

#include <stdexcept>
#include <string>

namespace gnbg {

/// Raised when a precondition on an argument is violated.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by BudgetedEvaluator once max_fe evaluations have been spent.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised while reading an instance or experiment document. `field()` names
/// the offending JSON path, e.g. "components[2].h_diag[4]".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace gnbg
