#pragma once

#include <stdexcept>
#include <string>

namespace loopforge {

enum class ErrorCode {
    InvalidInput = 1,
    DimensionMismatch,
    DegreeMismatch,
    CompositionNotZero,
    MalformedGraph,
    Disconnected,
    NonIntegralGenus,
    InvalidChordDiagram,
    IndexOutOfRange,
    ArityMismatch,
    UnassignedGenerator,
    InvalidGroup,
    SizeGuard,
    WiringMismatch,
    TruncationTooSmall,
    NotAnAlgebra,
    MissingOperator,
    MalformedCactus,
    Parse,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every recoverable failure in the library is reported through this type.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

}  // namespace loopforge
