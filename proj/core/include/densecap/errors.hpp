#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace densecap {

enum class ErrorCode {
    BlochNormExceeded,
    DimensionMismatch,
    InvalidState,
    InvalidDimension,
    FrameNotOrthonormal,
    InvalidEnsemble,
    NoStates,
    RankTooLarge,
    SplitMismatch,
    DimensionUnsupported,
    InvalidTrials,
    InvalidDistribution,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every recoverable failure in the library is reported through this type;
// callers switch on code() rather than on message text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace densecap
