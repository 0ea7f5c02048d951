#ifndef REALAC_ERROR_HPP
#define REALAC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace realac {

// One exception type for the whole library; 'code' identifies the
// contract that was violated so tests can assert on it without
// string-matching messages.
enum class ErrorCode {
    SyntaxError,
    UndeclaredSymbol,
    ArityMismatch,
    UnboundVariable,
    FreeVariable,
    ShadowedVariable,
    MissingArbTable,
    NoSolution,
    LengthMismatch,
    RangeViolation,
    InvalidCircuit,
    UnknownGate,
    NotTreeLike,
    NotLeveled,
    TooManyGates,
    NoUniverseSize,
    UnsupportedNesting,
    IoError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::SyntaxError: return "SyntaxError";
        case ErrorCode::UndeclaredSymbol: return "UndeclaredSymbol";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::UnboundVariable: return "UnboundVariable";
        case ErrorCode::FreeVariable: return "FreeVariable";
        case ErrorCode::ShadowedVariable: return "ShadowedVariable";
        case ErrorCode::MissingArbTable: return "MissingArbTable";
        case ErrorCode::NoSolution: return "NoSolution";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::RangeViolation: return "RangeViolation";
        case ErrorCode::InvalidCircuit: return "InvalidCircuit";
        case ErrorCode::UnknownGate: return "UnknownGate";
        case ErrorCode::NotTreeLike: return "NotTreeLike";
        case ErrorCode::NotLeveled: return "NotLeveled";
        case ErrorCode::TooManyGates: return "TooManyGates";
        case ErrorCode::NoUniverseSize: return "NoUniverseSize";
        case ErrorCode::UnsupportedNesting: return "UnsupportedNesting";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace realac

#endif
