#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace urnlab {

enum class ErrorCode {
  NonPositiveParameter,
  EmptyUrn,
  CapacityExceeded,
  OracleTooLarge,
  RowMissing,
  OrderExceedsTable,
  UnsupportedInitialConfig,
  PoleHit,
  ContourCrossesPole,
  QuadratureNotConverged,
  OutOfInterval,
  EmptyTail,
  InvalidArgument,
  MalformedDocument,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every domain failure in the library is reported through this type; the
// code lets callers (and the CLI) branch without parsing messages.
class UrnError : public std::runtime_error {
 public:
  UrnError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace urnlab
