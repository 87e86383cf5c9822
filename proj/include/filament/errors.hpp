#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace filament {

/// Failure categories. Each maps to a distinct CLI exit code so batch
/// drivers can tell a bad config from a degenerate curve or amplitude.
enum class ErrorCode {
    InvalidInput,
    ParseError,
    DegenerateCurve,
    DegenerateNormal,
    DegenerateAmplitude,
    InvalidDensity,
    InvalidConvention,
    NoRootInBracket,
    SweepTooLarge,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
  public:
    static constexpr std::size_t no_index = static_cast<std::size_t>(-1);

    Error(ErrorCode code, const std::string& message, std::size_t sample_index = no_index)
        : std::runtime_error(message), code_(code), sample_index_(sample_index) {}

    ErrorCode code() const { return code_; }

    /// Offending sample for degenerate-normal errors; no_index otherwise.
    std::size_t sample_index() const { return sample_index_; }

  private:
    ErrorCode code_;
    std::size_t sample_index_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              std::size_t sample_index = Error::no_index) {
    throw Error(code, message, sample_index);
}

}  // namespace filament
