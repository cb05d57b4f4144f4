#pragma once

#include <stdexcept>
#include <string>

namespace cohinfo {

enum class ErrorCode {
    NotSquare,
    NotHermitian,
    ShapeMismatch,
    DimensionMismatch,
    InvalidState,
    InvalidObservable,
    NotPure,
    NotDistribution,
    NotARefinement,
    UnsupportedDimension,
    BlocksDoNotCommute,
    UnsupportedBackend,
    ParseError,
    ValidationError,
    UnknownFixture,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace cohinfo
