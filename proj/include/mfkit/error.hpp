#ifndef MFKIT_ERROR_HPP
#define MFKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mfkit {

enum class ErrorCode {
    Parse,
    RingMismatch,
    FieldMismatch,
    DimensionMismatch,
    InvalidFactorization,
    PotentialMismatch,
    VariableCollision,
    Precondition,
    FitInconsistent,
    Io,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace mfkit

#endif
