#include "filament/errors.hpp"

namespace filament {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidInput: return "invalid-input";
        case ErrorCode::ParseError: return "parse-error";
        case ErrorCode::DegenerateCurve: return "degenerate-curve";
        case ErrorCode::DegenerateNormal: return "degenerate-normal";
        case ErrorCode::DegenerateAmplitude: return "degenerate-amplitude";
        case ErrorCode::InvalidDensity: return "invalid-density";
        case ErrorCode::InvalidConvention: return "invalid-convention";
        case ErrorCode::NoRootInBracket: return "no-root-in-bracket";
        case ErrorCode::SweepTooLarge: return "sweep-too-large";
    }
    return "unknown";
}

}  // namespace filament
