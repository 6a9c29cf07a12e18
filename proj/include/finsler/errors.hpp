// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

enum class ErrorCode {
    NotHermitian,
    NotPositiveDefinite,
    NotSquare,
    ShapeMismatch,
    SymmetryViolation,
    SamplerExhausted,
    BadParams,
    ZeroTangent,
    InvalidProfile,
    NotInDomain,
    NumericalBreakdown,
    SingularPivot,
    UsageError,
};

const char* to_string(ErrorCode code);

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

} // namespace finsler
