#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gf2to1/elem.hpp"

namespace gf2to1 {

enum class Errc {
  DegreeOutOfRange,
  NotIrreducible,
  DivisionByZero,
  NotADivisor,
  NotInvertible,
  ElementOutOfRange,
  ContextMismatch,
  ParseError,
  DegreeTooLow,
  ZeroConstantTerm,
  NotTwoToOne,
  OddDomain,
  DomainNotFullField,
  NotBijective,
  InvolutionsDiffer,
  TooLarge,
  ConditionFailed,
  InvalidParams,
  ZeroC,
  NoClosedForm,
  DeltaInSubfield,
  PoleAtTheta,
  IndexOutOfRange,
};

std::string_view errc_name(Errc code) noexcept;

// All library failures surface as this exception. `witness` carries the
// offending element when the failing check has one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<Elem> witness = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        witness_(witness) {}

  Errc code() const noexcept { return code_; }
  const std::optional<Elem>& witness() const noexcept { return witness_; }

 private:
  Errc code_;
  std::optional<Elem> witness_;
};

}  // namespace gf2to1
