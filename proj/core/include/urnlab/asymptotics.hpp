#pragma once

#include <cstddef>
#include <cstdint>

#include "urnlab/distribution.hpp"
#include "urnlab/history.hpp"
#include "urnlab/numeric.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

// mu = alpha (2 alpha + beta) / (alpha + beta),
// nu^2 = alpha^3 (2 alpha + beta) / (alpha + beta)^2.
struct LimitParams {
  Rational mu;
  Rational nu2;
  std::int64_t sigma = 0;
  std::int64_t lattice_span = 1;  // alpha

  double mu_value() const { return mu.get_d(); }
  double nu2_value() const { return nu2.get_d(); }
  double nu_value() const;
};

LimitParams limit_params(const UrnSpec& spec);

// Magnitude of the n^{alpha/sigma} coefficient of the mean:
// (alpha/(alpha+beta)) Gamma(1/sigma) / Gamma((alpha+1)/sigma).
double mean_correction_magnitude(const UrnSpec& spec);

struct MeanVariancePrediction {
  double mean = 0.0;
  double variance = 0.0;
  int sign = -1;
};

// mu n + sign * mean_correction_magnitude * n^{alpha/sigma} + alpha/(alpha+beta),
// and nu^2 n. The exact moments from the (0, 1) start call for sign = -1.
MeanVariancePrediction mean_variance_expansion(const UrnSpec& spec, double n, int sign = -1);

// (x^mu exp(nu^2/2 ln(x)^2))^n on the principal branch.
Complex quasi_power_pn(const LimitParams& params, Complex x, double n);
// Same at x = e^{iu/sqrt(n)}: exp(mu i u sqrt(n) - nu^2 u^2 / 2).
Complex quasi_power_pn_at(const LimitParams& params, double u, double n);
// sum_k P(X_n = v_k) x^{v_k}
Complex probability_generating_function(const LatticeMasses& masses, Complex x);

// Phi(t) via erfc.
double standard_normal_cdf(double t);
double standard_normal_density(double t);

// sup_t |P((X_n - mu n)/(nu sqrt n) <= t) - Phi(t)|, evaluated exactly at the
// jumps of the step function.
double gaussian_cdf_error(const LatticeMasses& masses, const LimitParams& params);
double gaussian_cdf_error(const HistoryTable& table, const LimitParams& params, std::size_t n);

// sup_t |nu sqrt(n) p_cell(t) / span - phi(t)| where p_cell(t) is the mass of
// the lattice cell [v_k, v_k + span) containing floor(mu n + t nu sqrt n).
// The sup is taken in closed form over each cell's t-interval.
double local_limit_error(const LatticeMasses& masses, const LimitParams& params);
double local_limit_error(const HistoryTable& table, const LimitParams& params, std::size_t n);

// W(t) = -min_{x in [x0, x1]} log(chi(x) / x^t), chi(x) = x^mu exp(nu^2/2 ln(x)^2),
// x0 = xi, x1 = 2 - xi.
class RateFunction {
 public:
  // Throws UrnError(InvalidArgument) unless 0 < xi < 1.
  RateFunction(const LimitParams& params, double xi);

  double xi() const noexcept { return xi_; }
  double x0() const noexcept { return xi_; }
  double x1() const noexcept { return 2.0 - xi_; }
  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  double mu() const noexcept { return mu_; }
  double nu2() const noexcept { return nu2_; }

  // (mu - t) ln x + (nu^2/2) (ln x)^2 = log(chi(x)/x^t)
  double objective(double x, double t) const;
  // Golden-section minimum of the objective on [x0, x1], negated. Throws
  // UrnError(OutOfInterval) for t outside [t0, t1].
  double eval(double t) const;
  // Minimiser of the objective (golden section).
  double argmin(double t) const;
  // (t - mu)^2 / (2 nu^2) when ln x* = (t - mu)/nu^2 is inside [ln x0, ln x1],
  // otherwise minus the objective at the nearer endpoint.
  double closed_form(double t) const;
  bool interior(double t) const;

 private:
  double xi_;
  double mu_;
  double nu2_;
  double t0_;
  double t1_;
};

inline constexpr double kGoldenSectionTol = 1e-12;

// -(1/n) log P(X_n >= t n) for t >= mu, -(1/n) log P(X_n <= t n) for t < mu.
// Throws UrnError(EmptyTail) when no support point lies in the tail.
double empirical_tail_exponent(const LogDistribution& dist, const LimitParams& params, double t);

}  // namespace urnlab
