#include "qent/error.hpp"

namespace qent {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::EmptyMatrix: return "EmptyMatrix";
  case ErrorCode::NotHermitian: return "NotHermitian";
  case ErrorCode::TraceNotOne: return "TraceNotOne";
  case ErrorCode::NotPSD: return "NotPSD";
  case ErrorCode::NoConvergence: return "NoConvergence";
  case ErrorCode::InvalidSpectrum: return "InvalidSpectrum";
  case ErrorCode::InvalidR: return "InvalidR";
  case ErrorCode::InvalidIndex: return "InvalidIndex";
  case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
  case ErrorCode::CapExceeded: return "CapExceeded";
  case ErrorCode::DegenerateContour: return "DegenerateContour";
  case ErrorCode::TooFewSamples: return "TooFewSamples";
  case ErrorCode::InvariantViolation: return "InvariantViolation";
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

} // namespace qent
