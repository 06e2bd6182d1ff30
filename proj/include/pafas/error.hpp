#pragma once

#include <stdexcept>
#include <string>

namespace pafas {

/// Machine-readable error categories. The CLI reports these as `error.kind`.
enum class ErrorKind {
    Syntax,
    UnguardedRecursion,
    IllegalReadSet,
    UrgencyPosition,
    UnknownName,
    ShadowedBinder,
    WrongDialect,
    OpenTerm,
    ImproperInput,
    NotRnf,
    NoMatch,
    SideConditionViolated,
    OutsideFragment,
    NotSafe,
    InvalidNet,
    BoundExceeded,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& message, int line, int column)
        : Error(kind, message + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace pafas
