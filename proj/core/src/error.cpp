#include "paekit/error.hpp"

namespace paekit {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::VersionError: return "VersionError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::MissingTag: return "MissingTag";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::UnknownRecipe: return "UnknownRecipe";
    case ErrorCode::BadDims: return "BadDims";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::AlphaExceedsCorpus: return "AlphaExceedsCorpus";
    case ErrorCode::SubspaceViolation: return "SubspaceViolation";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NullTextProjection: return "NullTextProjection";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
  }
  return "UnknownError";
}

ErrorClass error_class(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::SchemaError:
    case ErrorCode::VersionError:
    case ErrorCode::IoError:
    case ErrorCode::DimMismatch:
    case ErrorCode::KindMismatch:
    case ErrorCode::EmptyInput:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidConfig:
    case ErrorCode::NotFound:
    case ErrorCode::MissingTag:
    case ErrorCode::EmptyGroup:
    case ErrorCode::UnknownRecipe:
    case ErrorCode::BadDims:
    case ErrorCode::InvalidAlpha:
    case ErrorCode::AlphaExceedsCorpus:
    case ErrorCode::SubspaceViolation:
      return ErrorClass::Data;
    case ErrorCode::ZeroVector:
    case ErrorCode::DegenerateBasis:
    case ErrorCode::RankDeficient:
    case ErrorCode::NullTextProjection:
    case ErrorCode::DegenerateDirection:
      return ErrorClass::Numeric;
  }
  return ErrorClass::Data;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code), message_(message) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace paekit
