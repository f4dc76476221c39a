#include "gaitlock/error.hpp"

namespace gaitlock {

std::string_view to_string(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidArgument: return "InvalidArgument";
  case ErrorCode::Io: return "Io";
  case ErrorCode::EmptyDirectory: return "EmptyDirectory";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::DecodeError: return "DecodeError";
  case ErrorCode::TooFewFrames: return "TooFewFrames";
  case ErrorCode::SequenceTooShort: return "SequenceTooShort";
  case ErrorCode::NoPeriodicity: return "NoPeriodicity";
  case ErrorCode::InsufficientCycles: return "InsufficientCycles";
  case ErrorCode::EmptyWindow: return "EmptyWindow";
  case ErrorCode::BadDimensions: return "BadDimensions";
  case ErrorCode::BadComponentLength: return "BadComponentLength";
  case ErrorCode::SingleClass: return "SingleClass";
  case ErrorCode::NonFinite: return "NonFinite";
  case ErrorCode::TooFewClasses: return "TooFewClasses";
  case ErrorCode::FormatError: return "FormatError";
  case ErrorCode::VersionMismatch: return "VersionMismatch";
  case ErrorCode::LengthMismatch: return "LengthMismatch";
  case ErrorCode::Empty: return "Empty";
  case ErrorCode::SpecOutOfBounds: return "SpecOutOfBounds";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorCode code, const std::string& message, const std::string& stage) {
  std::string out;
  if (!stage.empty()) out += "[" + stage + "] ";
  out += std::string(to_string(code)) + ": " + message;
  return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, std::string stage)
    : std::runtime_error(compose(code, message, stage)), code_(code), detail_(message),
      stage_(std::move(stage)) {}

Error Error::with_stage(std::string stage) const { return Error(code_, detail_, std::move(stage)); }

} // namespace gaitlock
