#pragma once

#include <stdexcept>
#include <string>

namespace okwa {

enum class ErrorKind {
  NonMonicPolynomial,
  ReduciblePolynomial,
  SingularBasis,
  InvalidBasis,
  NonIntegralMultTable,
  DivisionByZero,
  DimensionMismatch,
  NotFullRank,
  NoSolution,
  ZeroIdeal,
  FieldMismatch,
  NonIntegralInput,
  NotCoprime,
  LengthMismatch,
  NotIntegral,
  UnknownSymbol,
  NoConjugate,
  AlphabetMismatch,
  InternalInconsistency,
  TeacherInconsistent,
  NonIntegralTeacher,
  DimensionLimitExceeded,
  Parse,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonMonicPolynomial: return "NonMonicPolynomial";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::InvalidBasis: return "InvalidBasis";
    case ErrorKind::NonIntegralMultTable: return "NonIntegralMultTable";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotFullRank: return "NotFullRank";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::ZeroIdeal: return "ZeroIdeal";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::NonIntegralInput: return "NonIntegralInput";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::NoConjugate: return "NoConjugate";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::TeacherInconsistent: return "TeacherInconsistent";
    case ErrorKind::NonIntegralTeacher: return "NonIntegralTeacher";
    case ErrorKind::DimensionLimitExceeded: return "DimensionLimitExceeded";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

inline void require(bool cond, ErrorKind kind, const std::string& msg) {
  if (!cond) fail(kind, msg);
}

}  // namespace okwa
