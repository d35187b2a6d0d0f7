#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ringlab {

enum class ErrorCode {
    CapExceeded,
    InfiniteRing,
    CharZero,
    NotAnIdeal,
    NotNilIdeal,
    WitnessInvalid,
    NotPeriodic,
    InvalidDescriptor,
    InvalidGroup,
    OwnerMismatch,
    SyntaxError,
    SemanticError,
    WrongShape,
    Unsupported,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with a 0-based byte offset into the input and what the parser wanted there.
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t position, std::string expected, const std::string& message)
        : Error(code, message), position_(position), expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace ringlab
