#pragma once

#include <stdexcept>
#include <string>

namespace limitcone {

// Contract violations surface as exceptions carrying a stable machine code.
// Analysis-level outcomes (NotFound, CapExceeded, Undecided, ...) are values
// on the result types, not exceptions.
enum class ErrorCode {
  NotSquarefree,
  NotTotallyReal,
  NotIrreducible,
  DivisionByZero,
  FieldMismatch,
  BadIndex,
  BadQ,
  ConstructionInvalid,
  NotHyperbolic,
  CommonFixedPoint,
  NoTranslationDirection,
  EmptyCloud,
  DegreeOne,
  BadSpec,
  BadFlag,
  IoError,
  Internal,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotTotallyReal: return "NotTotallyReal";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadQ: return "BadQ";
    case ErrorCode::ConstructionInvalid: return "ConstructionInvalid";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::CommonFixedPoint: return "CommonFixedPoint";
    case ErrorCode::NoTranslationDirection: return "NoTranslationDirection";
    case ErrorCode::EmptyCloud: return "EmptyCloud";
    case ErrorCode::DegreeOne: return "DegreeOne";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::BadFlag: return "BadFlag";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }
  const char* code_name() const { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace limitcone
