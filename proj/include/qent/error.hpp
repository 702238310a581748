#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qent {

enum class ErrorCode {
  EmptyMatrix,
  NotHermitian,
  TraceNotOne,
  NotPSD,
  NoConvergence,
  InvalidSpectrum,
  InvalidR,
  InvalidIndex,
  AlphaOutOfRange,
  CapExceeded,
  DegenerateContour,
  TooFewSamples,
  InvariantViolation,
  ParseError,
  Usage,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so that callers (the CLI
// in particular) can map it onto a stable exit status.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace qent
