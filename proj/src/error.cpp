#include "cfuse/error.hpp"

namespace cfuse {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MalformedImage: return "MalformedImage";
    case ErrorCode::UnsupportedBitDepth: return "UnsupportedBitDepth";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::WeightLengthMismatch: return "WeightLengthMismatch";
    case ErrorCode::ChannelTagMismatch: return "ChannelTagMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::InvalidOffset: return "InvalidOffset";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ZeroBrightnessPair: return "ZeroBrightnessPair";
    case ErrorCode::GeometryViolation: return "GeometryViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "UnknownError";
}

} // namespace cfuse
