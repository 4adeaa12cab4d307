#include "loops/error.hpp"

namespace loops {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::BadShape: return "BadShape";
    case Errc::NotLatin: return "NotLatin";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NotNormal: return "NotNormal";
    case Errc::ParseError: return "ParseError";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NotBijection: return "NotBijection";
    case Errc::TooLarge: return "TooLarge";
    case Errc::BadAction: return "BadAction";
    case Errc::BadCocycle: return "BadCocycle";
    case Errc::KernelNotNuclear: return "KernelNotNuclear";
    case Errc::KernelNotNormal: return "KernelNotNormal";
    case Errc::BadSection: return "BadSection";
    case Errc::ActionsDoNotCommute: return "ActionsDoNotCommute";
    case Errc::ChainViolation: return "ChainViolation";
    case Errc::NotNormalizedMu: return "NotNormalizedMu";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::ClassMismatch: return "ClassMismatch";
    case Errc::NotCentralInvolution: return "NotCentralInvolution";
    case Errc::BadCosetStructure: return "BadCosetStructure";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace loops
