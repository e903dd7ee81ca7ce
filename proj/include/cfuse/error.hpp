#pragma once

#include <stdexcept>
#include <string>

namespace cfuse {

/// Failure categories surfaced by the library. Each operation documents
/// which categories it can raise; the CLI maps them onto exit codes.
enum class ErrorCode {
    FileNotFound,
    MalformedImage,
    UnsupportedBitDepth,
    IoFailure,
    RangeViolation,
    NegativeValue,
    DimensionMismatch,
    EmptySequence,
    WeightLengthMismatch,
    ChannelTagMismatch,
    DivisionByZero,
    OutOfBounds,
    InvalidOffset,
    DegenerateDenominator,
    ZeroBrightnessPair,
    GeometryViolation,
    InvalidArgument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace cfuse
