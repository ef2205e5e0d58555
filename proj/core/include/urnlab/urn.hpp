#pragma once

#include <cstdint>

#include "urnlab/numeric.hpp"

namespace urnlab {

// Preferential growth urn A(alpha, beta): a black draw adds (2*alpha, beta)
// balls, a white draw adds (alpha, alpha + beta). Only obtainable through
// validate_urn, so every instance satisfies alpha, beta >= 1 and a0 + b0 >= 1.
class UrnSpec {
 public:
  std::int64_t alpha() const noexcept { return alpha_; }
  std::int64_t beta() const noexcept { return beta_; }
  std::int64_t a0() const noexcept { return a0_; }
  std::int64_t b0() const noexcept { return b0_; }

  // Balance: balls added per step.
  std::int64_t sigma() const noexcept { return 2 * alpha_ + beta_; }
  // Dissymmetry index p = -alpha; the rule matrix has eigenvalues -p and sigma.
  std::int64_t dissymmetry() const noexcept { return -alpha_; }
  // Eigenvalue ratio alpha / sigma, always <= 1/2 ("small" urn).
  Rational rho() const { return Rational(alpha_, sigma()); }

  bool starts_from_single_white() const noexcept { return a0_ == 0 && b0_ == 1; }

  // Ball counts after n steps of which k drew black.
  std::int64_t black(std::int64_t n, std::int64_t k) const noexcept {
    return a0_ + alpha_ * n + alpha_ * k;
  }
  std::int64_t white(std::int64_t n, std::int64_t k) const noexcept {
    return b0_ + (alpha_ + beta_) * n - alpha_ * k;
  }
  std::int64_t total_balls(std::int64_t n) const noexcept { return a0_ + b0_ + sigma() * n; }

  friend bool operator==(const UrnSpec&, const UrnSpec&) = default;

 private:
  friend UrnSpec validate_urn(std::int64_t, std::int64_t, std::int64_t, std::int64_t);
  UrnSpec(std::int64_t alpha, std::int64_t beta, std::int64_t a0, std::int64_t b0)
      : alpha_(alpha), beta_(beta), a0_(a0), b0_(b0) {}

  std::int64_t alpha_;
  std::int64_t beta_;
  std::int64_t a0_;
  std::int64_t b0_;
};

// Throws UrnError(NonPositiveParameter) for alpha or beta < 1 and for negative
// initial counts, UrnError(EmptyUrn) when a0 + b0 == 0.
UrnSpec validate_urn(std::int64_t alpha, std::int64_t beta, std::int64_t a0, std::int64_t b0);

}  // namespace urnlab
