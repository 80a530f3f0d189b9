#pragma once

#include <stdexcept>
#include <string>

namespace ksforge {

enum class ErrorKind {
  NonIntegerScale,
  DegenerateEigenspace,
  NotOrthogonal,
  NoEmbedding,
  StructureError,
  MultiplicityError,
  AmbiguityError,
  ForbiddenPairError,
  NotParityForm,
  NotPresent,
  OverlapZero,
  ParseError,
  Overflow,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonIntegerScale: return "NonIntegerScale";
    case ErrorKind::DegenerateEigenspace: return "DegenerateEigenspace";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NoEmbedding: return "NoEmbedding";
    case ErrorKind::StructureError: return "StructureError";
    case ErrorKind::MultiplicityError: return "MultiplicityError";
    case ErrorKind::AmbiguityError: return "AmbiguityError";
    case ErrorKind::ForbiddenPairError: return "ForbiddenPairError";
    case ErrorKind::NotParityForm: return "NotParityForm";
    case ErrorKind::NotPresent: return "NotPresent";
    case ErrorKind::OverlapZero: return "OverlapZero";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Base exception for every failure the library reports. `kind()` lets callers
/// bucket failures without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ksforge
