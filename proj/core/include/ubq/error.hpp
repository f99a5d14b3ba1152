#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ubq {

enum class ErrorCode {
    NotABijection,
    LengthMismatch,
    InvalidKey,
    InvalidConfig,
    InvalidArgument,
    DegenerateChannel,
    DegenerateShape,
    ZeroInformation,
    ThetaOutOfBounds,
    NotSpecialCase,
    ZeroGap,
    DegenerateFit,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Errors raised by the library carry a code so callers (the CLI in
/// particular) can map them to exit statuses without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for errors caused by malformed inputs rather than numerics.
    bool is_config_error() const noexcept {
        return code_ == ErrorCode::InvalidConfig || code_ == ErrorCode::InvalidArgument ||
               code_ == ErrorCode::LengthMismatch || code_ == ErrorCode::NotABijection;
    }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace ubq
