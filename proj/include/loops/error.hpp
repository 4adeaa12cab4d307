#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loops {

enum class Errc {
  BadShape,
  NotLatin,
  NoIdentity,
  NotNormal,
  ParseError,
  DegreeMismatch,
  NotBijection,
  TooLarge,
  BadAction,
  BadCocycle,
  KernelNotNuclear,
  KernelNotNormal,
  BadSection,
  ActionsDoNotCommute,
  ChainViolation,
  NotNormalizedMu,
  PreconditionFailed,
  ClassMismatch,
  NotCentralInvolution,
  BadCosetStructure,
  InvalidArgument,
};

std::string_view errc_name(Errc code);

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace loops
