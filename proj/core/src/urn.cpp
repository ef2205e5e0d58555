#include "urnlab/urn.hpp"

#include <string>

#include "urnlab/error.hpp"

namespace urnlab {

UrnSpec validate_urn(std::int64_t alpha, std::int64_t beta, std::int64_t a0, std::int64_t b0) {
  if (alpha <= 0 || beta <= 0) {
    throw UrnError(ErrorCode::NonPositiveParameter,
                   "alpha and beta must be >= 1 (got alpha=" + std::to_string(alpha) +
                       ", beta=" + std::to_string(beta) + ")");
  }
  if (a0 < 0 || b0 < 0) {
    throw UrnError(ErrorCode::NonPositiveParameter, "initial ball counts must be non-negative");
  }
  if (a0 + b0 == 0) throw UrnError(ErrorCode::EmptyUrn, "a0 + b0 must be at least 1");
  return UrnSpec(alpha, beta, a0, b0);
}

}  // namespace urnlab
