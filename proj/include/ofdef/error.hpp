#pragma once

#include <stdexcept>
#include <string>

namespace ofdef {

enum class ErrorKind {
    DivisionByZero,
    FieldMismatch,
    InvalidArgument,
    UnsupportedPrime,
    FactorBoundExceeded,
    NotASquare,
    BoundExceeded,
    NoWitness,
    EllTooSmall,
    DescentFailed,
    Parse,
    Validation,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can render it as structured JSON.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace ofdef
