#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace waring {

enum class ErrorKind {
    NotPrime,
    ReducibleModulus,
    DegreeMismatch,
    UnsupportedField,
    DivisionByZero,
    SizeMismatch,
    FieldMismatch,
    DiagNotKthPower,
    DiagNotDistinct,
    PreconditionViolated,
    RootMismatch,
    BadPartition,
    IndexOutOfRange,
    EqualDiagonal,
    NotNilpotent,
    ParseError,
    LabelOutOfRange,
    DuplicateVertex,
    InsufficientClasses,
    NoAdmissibleShift,
    EnumerationTooLarge,
    HypothesisViolated,
    EvenCharacteristic,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so that
// callers (CLI, Python) can map it to a stable name.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace waring
