#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paekit {

/// Every failure the library reports carries one of these codes. The CLI maps
/// each code onto an exit-code class, so adding a code means extending
/// `error_class` as well.
enum class ErrorCode {
  // data / validation
  ParseError,
  SchemaError,
  VersionError,
  IoError,
  DimMismatch,
  KindMismatch,
  EmptyInput,
  InvalidArgument,
  InvalidConfig,
  NotFound,
  MissingTag,
  EmptyGroup,
  UnknownRecipe,
  BadDims,
  InvalidAlpha,
  AlphaExceedsCorpus,
  SubspaceViolation,
  // numeric / degenerate
  ZeroVector,
  DegenerateBasis,
  RankDeficient,
  NullTextProjection,
  DegenerateDirection,
};

enum class ErrorClass { Data, Numeric };

std::string_view error_name(ErrorCode code) noexcept;
ErrorClass error_class(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  // Message without the "Name: " prefix carried by what().
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace paekit
