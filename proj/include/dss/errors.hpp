#pragma once

#include <stdexcept>
#include <string>

namespace dss {

// Error taxonomy shared by all modules. Callers that care about the exact
// failure match on the code; the message carries context for humans.
enum class Err {
    BadParams,
    BadThreat,
    BadTrace,
    BadCollector,
    DivideByZero,
    ShapeError,
    NoSolution,
    NotMds,
    FieldTooSmall,
    PunctureTooDeep,
    TooFewSymbols,
    NotSupported,
    AdversaryOmniscient,
    AdversaryTooStrong,
    CapacityZero,
    BudgetExceeded,
    ModelViolation,
    NoSidecar,
    TooLarge,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::BadParams: return "BadParams";
        case Err::BadThreat: return "BadThreat";
        case Err::BadTrace: return "BadTrace";
        case Err::BadCollector: return "BadCollector";
        case Err::DivideByZero: return "DivideByZero";
        case Err::ShapeError: return "ShapeError";
        case Err::NoSolution: return "NoSolution";
        case Err::NotMds: return "NotMds";
        case Err::FieldTooSmall: return "FieldTooSmall";
        case Err::PunctureTooDeep: return "PunctureTooDeep";
        case Err::TooFewSymbols: return "TooFewSymbols";
        case Err::NotSupported: return "NotSupported";
        case Err::AdversaryOmniscient: return "AdversaryOmniscient";
        case Err::AdversaryTooStrong: return "AdversaryTooStrong";
        case Err::CapacityZero: return "CapacityZero";
        case Err::BudgetExceeded: return "BudgetExceeded";
        case Err::ModelViolation: return "ModelViolation";
        case Err::NoSidecar: return "NoSidecar";
        case Err::TooLarge: return "TooLarge";
    }
    return "Unknown";
}

class DssError : public std::runtime_error {
public:
    DssError(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

    Err code() const noexcept { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw DssError(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

} // namespace dss
