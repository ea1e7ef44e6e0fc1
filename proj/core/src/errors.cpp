#include "fanodeg/errors.hpp"

namespace fanodeg {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::OriginNotInterior: return "OriginNotInterior";
    case Errc::BoundTooSmall: return "BoundTooSmall";
    case Errc::NotFano: return "NotFano";
    case Errc::InvalidType: return "InvalidType";
    case Errc::ContentExceeded: return "ContentExceeded";
    case Errc::NonConvexImage: return "NonConvexImage";
    case Errc::NonInvertibleWallFunction: return "NonInvertibleWallFunction";
    case Errc::MissingParameter: return "MissingParameter";
    case Errc::IllegalLoop: return "IllegalLoop";
    case Errc::NonUnitWall: return "NonUnitWall";
    case Errc::DefectNotRayDecomposable: return "DefectNotRayDecomposable";
    case Errc::NonArtinianQuotient: return "NonArtinianQuotient";
    case Errc::GenerationFailure: return "GenerationFailure";
    case Errc::VerificationFailure: return "VerificationFailure";
    case Errc::NonIntegralPhi: return "NonIntegralPhi";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::ZeroContent: return "ZeroContent";
    case Errc::DegreeExceedsContent: return "DegreeExceedsContent";
    case Errc::LabelMismatch: return "LabelMismatch";
    case Errc::NonRepresentable: return "NonRepresentable";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

DomainError::DomainError(Errc code, std::string operation, const std::string& detail)
    : std::runtime_error(std::string(errc_name(code)) + " in " + operation +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code),
      operation_(std::move(operation)),
      detail_(detail) {}

ParseError::ParseError(const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? message + " (line " + std::to_string(line) +
                                        ", column " + std::to_string(column) + ")"
                                  : message),
      line_(line),
      column_(column) {}

}  // namespace fanodeg
