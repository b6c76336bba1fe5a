#pragma once

#include <stdexcept>
#include <string>

namespace omql {

// Every failure raised by the library carries a stable code so the CLI and
// the tests can distinguish them without parsing messages.
enum class ErrorCode {
  // lattice-core
  NotALattice,
  NotInvolutive,
  NotOrtho,
  NotOrthomodular,
  Degenerate,
  BadTables,
  SizeCapExceeded,
  NotCentral,
  NotCompatible,
  UnknownBuiltin,
  BadParam,
  LoadError,
  // modal-oml
  UnboundVariable,
  VarCapExceeded,
  // foulis-semigroup
  NotAssociative,
  ZeroLaw,
  StarLaw,
  NotBaer,
  NonUniqueProjection,
  CapExceeded,
  RepresentationFailure,
  // logic-calculus
  SyntaxError,
  MalformedScript,
  NotConsequence,
  // kripke
  UnknownVariable,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace omql
