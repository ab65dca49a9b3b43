#pragma once

#include <stdexcept>
#include <string>

namespace symdet {

struct FieldMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DivisionByZeroError : std::domain_error {
    DivisionByZeroError() : std::domain_error("division by zero") {}
};

struct UnsupportedCharacteristicError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when an enumeration or symbolic-determinant guard is exceeded.
struct TooLargeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotASquareError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotAlternatingError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonInvertiblePivotError : std::domain_error {
    using std::domain_error::domain_error;
};

struct InvalidEntryError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

}  // namespace symdet
