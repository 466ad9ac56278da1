#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

enum class ErrorKind {
  NoRelationWithinBound,
  TooShort,
  TooLarge,
  NotIrreducible,
  NotBiEquivariant,
  SystemMismatch,
  ParityViolation,
  WindowExhausted,
  GapTooLarge,
  TauMismatch,
  BasisMismatch,
  WrongModularCase,
  ParseError,
  FieldMismatch,
  InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NoRelationWithinBound: return "NoRelationWithinBound";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotBiEquivariant: return "NotBiEquivariant";
    case ErrorKind::SystemMismatch: return "SystemMismatch";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::WindowExhausted: return "WindowExhausted";
    case ErrorKind::GapTooLarge: return "GapTooLarge";
    case ErrorKind::TauMismatch: return "TauMismatch";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::WrongModularCase: return "WrongModularCase";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace hecke
