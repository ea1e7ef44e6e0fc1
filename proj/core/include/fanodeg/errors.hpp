#pragma once

#include <stdexcept>
#include <string>

namespace fanodeg {

enum class Errc {
  OriginNotInterior,
  BoundTooSmall,
  NotFano,
  InvalidType,
  ContentExceeded,
  NonConvexImage,
  NonInvertibleWallFunction,
  MissingParameter,
  IllegalLoop,
  NonUnitWall,
  DefectNotRayDecomposable,
  NonArtinianQuotient,
  GenerationFailure,
  VerificationFailure,
  NonIntegralPhi,
  RankDeficient,
  ZeroContent,
  DegreeExceedsContent,
  LabelMismatch,
  NonRepresentable,
  InvalidArgument,
};

const char* errc_name(Errc code);

// Precondition or domain failure raised by a library operation.
class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, std::string operation, const std::string& detail);

  Errc code() const noexcept { return code_; }
  const std::string& operation() const noexcept { return operation_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string operation_;
  std::string detail_;
};

// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace fanodeg
