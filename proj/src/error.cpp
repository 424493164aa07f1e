#include "skewrd/error.hpp"

namespace skewrd {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_params: return "invalid-params";
        case ErrorCode::invalid_r0: return "invalid-r0";
        case ErrorCode::invalid_argument: return "invalid-argument";
        case ErrorCode::sector_violation: return "sector-violation";
        case ErrorCode::hypothesis_violation: return "hypothesis-violation";
        case ErrorCode::determinant_underflow: return "determinant-underflow";
        case ErrorCode::quadrature_resolution: return "quadrature-resolution";
        case ErrorCode::singular_system: return "singular-system";
        case ErrorCode::nyquist_exceeded: return "nyquist-exceeded";
        case ErrorCode::step_instability: return "step-instability";
        case ErrorCode::config_syntax: return "config-syntax";
        case ErrorCode::config_unknown_key: return "config-unknown-key";
        case ErrorCode::config_duplicate_key: return "config-duplicate-key";
        case ErrorCode::config_value: return "config-value";
        case ErrorCode::io_failure: return "io-failure";
        case ErrorCode::acceptance_failure: return "acceptance-failure";
    }
    return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

int exit_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_params:
        case ErrorCode::invalid_r0:
        case ErrorCode::invalid_argument:
        case ErrorCode::sector_violation:
        case ErrorCode::nyquist_exceeded:
        case ErrorCode::config_syntax:
        case ErrorCode::config_unknown_key:
        case ErrorCode::config_duplicate_key:
        case ErrorCode::config_value:
        case ErrorCode::io_failure:
            return 2;
        case ErrorCode::determinant_underflow:
        case ErrorCode::quadrature_resolution:
        case ErrorCode::singular_system:
        case ErrorCode::step_instability:
            return 3;
        case ErrorCode::hypothesis_violation:
        case ErrorCode::acceptance_failure:
            return 4;
    }
    return 3;
}

}  // namespace skewrd
