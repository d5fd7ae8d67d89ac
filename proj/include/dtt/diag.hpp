#ifndef DTT_DIAG_HPP
#define DTT_DIAG_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dtt {

// Byte-offset range into a source file.
struct SourceSpan {
  std::string file;
  size_t start = 0;
  size_t end = 0;
  bool valid() const { return !file.empty() || end > start; }
};

enum class ErrCode {
  UnboundIndex,
  UnboundName,
  DuplicateDefinition,
  ModalityViolation,
  ModeMismatch,
  OrderViolation,
  NotFlat,
  NotAFunction,
  UniverseExpected,
  AnnotationRequired,
  TypeMismatch,
  SideConditionFailed,
  SchemaViolation,
  ArityMismatch,
  ShapeMismatch,
  ParseError,
  FuelExhausted,
  KernelInvariant,
};

inline const char* err_code_name(ErrCode c) {
  switch (c) {
    case ErrCode::UnboundIndex: return "unbound-index";
    case ErrCode::UnboundName: return "unbound-name";
    case ErrCode::DuplicateDefinition: return "duplicate-definition";
    case ErrCode::ModalityViolation: return "modality-violation";
    case ErrCode::ModeMismatch: return "mode-mismatch";
    case ErrCode::OrderViolation: return "order-violation";
    case ErrCode::NotFlat: return "not-flat";
    case ErrCode::NotAFunction: return "not-a-function";
    case ErrCode::UniverseExpected: return "universe-expected";
    case ErrCode::AnnotationRequired: return "annotation-required";
    case ErrCode::TypeMismatch: return "type-mismatch";
    case ErrCode::SideConditionFailed: return "side-condition-failed";
    case ErrCode::SchemaViolation: return "schema-violation";
    case ErrCode::ArityMismatch: return "arity-mismatch";
    case ErrCode::ShapeMismatch: return "shape-mismatch";
    case ErrCode::ParseError: return "parse-error";
    case ErrCode::FuelExhausted: return "fuel-exhausted";
    case ErrCode::KernelInvariant: return "kernel-invariant";
  }
  return "unknown";
}

struct Diag : std::runtime_error {
  ErrCode code;
  SourceSpan span;
  Diag(ErrCode c, const std::string& msg) : std::runtime_error(msg), code(c) {}
  Diag(ErrCode c, const std::string& msg, SourceSpan s)
      : std::runtime_error(msg), code(c), span(std::move(s)) {}
};

[[noreturn]] inline void fail(ErrCode c, const std::string& msg) { throw Diag(c, msg); }

}  // namespace dtt

#endif  // DTT_DIAG_HPP
