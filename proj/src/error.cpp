#include "omql/error.hpp"

namespace omql {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NotInvolutive: return "NotInvolutive";
    case ErrorCode::NotOrtho: return "NotOrtho";
    case ErrorCode::NotOrthomodular: return "NotOrthomodular";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::BadTables: return "BadTables";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::UnknownBuiltin: return "UnknownBuiltin";
    case ErrorCode::BadParam: return "BadParam";
    case ErrorCode::LoadError: return "LoadError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::VarCapExceeded: return "VarCapExceeded";
    case ErrorCode::NotAssociative: return "NotAssociative";
    case ErrorCode::ZeroLaw: return "ZeroLaw";
    case ErrorCode::StarLaw: return "StarLaw";
    case ErrorCode::NotBaer: return "NotBaer";
    case ErrorCode::NonUniqueProjection: return "NonUniqueProjection";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::RepresentationFailure: return "RepresentationFailure";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MalformedScript: return "MalformedScript";
    case ErrorCode::NotConsequence: return "NotConsequence";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
  }
  return "Unknown";
}

}  // namespace omql
