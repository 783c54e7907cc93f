#pragma once

#include <stdexcept>
#include <string>

namespace sumeta {

// Every failure the library can report. Codes mirror the conditions a
// caller might want to branch on; the message carries the detail
// (offending ids, line numbers).
enum class ErrorCode {
    MissingOutput,
    DuplicateId,
    MalformedRecord,
    UnknownSystem,
    UnknownDocument,
    UnknownScu,
    NonFiniteScore,
    DuplicateEntry,
    TooFewWorkers,
    NoJudgments,
    NoScus,
    InsufficientData,
    LengthMismatch,
    TooShort,
    DegenerateCorrelationMatrix,
    IncompleteScores,
    TooFewSystems,
    AllDocumentsDegenerate,
    MetricSetMismatch,
    CorpusTooSmall,
    InvalidArgument,
    IoError,
};

inline const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::MissingOutput: return "MissingOutput";
        case ErrorCode::DuplicateId: return "DuplicateId";
        case ErrorCode::MalformedRecord: return "MalformedRecord";
        case ErrorCode::UnknownSystem: return "UnknownSystem";
        case ErrorCode::UnknownDocument: return "UnknownDocument";
        case ErrorCode::UnknownScu: return "UnknownScu";
        case ErrorCode::NonFiniteScore: return "NonFiniteScore";
        case ErrorCode::DuplicateEntry: return "DuplicateEntry";
        case ErrorCode::TooFewWorkers: return "TooFewWorkers";
        case ErrorCode::NoJudgments: return "NoJudgments";
        case ErrorCode::NoScus: return "NoScus";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::DegenerateCorrelationMatrix: return "DegenerateCorrelationMatrix";
        case ErrorCode::IncompleteScores: return "IncompleteScores";
        case ErrorCode::TooFewSystems: return "TooFewSystems";
        case ErrorCode::AllDocumentsDegenerate: return "AllDocumentsDegenerate";
        case ErrorCode::MetricSetMismatch: return "MetricSetMismatch";
        case ErrorCode::CorpusTooSmall: return "CorpusTooSmall";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::IoError: return "IoError";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace sumeta
