#include "urnlab/error.hpp"

namespace urnlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::EmptyUrn: return "EmptyUrn";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::OracleTooLarge: return "OracleTooLarge";
    case ErrorCode::RowMissing: return "RowMissing";
    case ErrorCode::OrderExceedsTable: return "OrderExceedsTable";
    case ErrorCode::UnsupportedInitialConfig: return "UnsupportedInitialConfig";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::ContourCrossesPole: return "ContourCrossesPole";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::OutOfInterval: return "OutOfInterval";
    case ErrorCode::EmptyTail: return "EmptyTail";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedDocument: return "MalformedDocument";
  }
  return "Unknown";
}

}  // namespace urnlab
