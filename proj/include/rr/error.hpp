#pragma once

#include <stdexcept>
#include <string>

namespace rr {

enum class ErrorCode {
    InvalidInput,
    SingularMatrix,
    ContractViolation,
    UnknownPlace,
    MaxMinIncomplete,
    FieldTooSmall,
    NotIrreducible,
    NotMonic,
    PrecisionCap,
    Syntax,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace rr
