#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaitlock {

enum class ErrorCode {
  InvalidArgument,
  Io,
  EmptyDirectory,
  DimensionMismatch,
  DecodeError,
  TooFewFrames,
  SequenceTooShort,
  NoPeriodicity,
  InsufficientCycles,
  EmptyWindow,
  BadDimensions,
  BadComponentLength,
  SingleClass,
  NonFinite,
  TooFewClasses,
  FormatError,
  VersionMismatch,
  LengthMismatch,
  Empty,
  SpecOutOfBounds,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `stage` names the pipeline stage
// (ingestion, background, ...) when the error crossed a stage boundary.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message, std::string stage = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  Error with_stage(std::string stage) const;

private:
  ErrorCode code_;
  std::string detail_;
  std::string stage_;
};

} // namespace gaitlock
