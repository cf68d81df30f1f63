#pragma once

#include <stdexcept>
#include <string>

namespace aksz {

enum class ErrorKind {
    syntax,
    unknown_identifier,
    odd_square,
    mixed_charts,
    parity_mismatch,
    inhomogeneous_parity,
    odd_in_berezin_list,
    not_closed,
    degree_zero,
    not_invertible,
    not_nilpotent_perturbation,
    integrability_violation,
    potential_mismatch,
    volume_not_invariant,
    no_sign_works,
    invalid_argument,
    schema,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised by the expression parser. Column is 1-based within the source text.
class ParseError : public Error {
public:
    ParseError(ErrorKind kind, const std::string& what, std::size_t line, std::size_t column)
        : Error(kind, what + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace aksz
