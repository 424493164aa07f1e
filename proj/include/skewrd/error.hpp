#pragma once

#include <stdexcept>
#include <string>

namespace skewrd {

enum class ErrorCode {
    invalid_params,
    invalid_r0,
    invalid_argument,
    sector_violation,
    hypothesis_violation,
    determinant_underflow,
    quadrature_resolution,
    singular_system,
    nyquist_exceeded,
    step_instability,
    config_syntax,
    config_unknown_key,
    config_duplicate_key,
    config_value,
    io_failure,
    acceptance_failure,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

// Process exit status: 2 configuration, 3 numerical, 4 invariant/acceptance.
int exit_status(ErrorCode code);

}  // namespace skewrd
