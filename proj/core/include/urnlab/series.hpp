#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "urnlab/history.hpp"
#include "urnlab/numeric.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

// c_0..c_N of H(x, z) = sum_n (sum_k counts[n][k] x^{black(n,k)}) z^n / n!
// at a fixed point x.
template <class T>
struct TruncatedSeries {
  UrnSpec spec;
  T x;
  std::vector<T> coeffs;

  std::size_t order() const noexcept { return coeffs.size() - 1; }
};

// Throws UrnError(OrderExceedsTable) if order > table.n_max() and
// UrnError(InvalidArgument) for x == 0.
TruncatedSeries<Rational> series_from_table(const HistoryTable& table, const Rational& x,
                                            std::size_t order);
TruncatedSeries<HighReal> series_from_table(const HistoryTable& table, const HighReal& x,
                                            std::size_t order);
TruncatedSeries<double> series_from_table(const HistoryTable& table, double x,
                                          std::size_t order);

// Coefficient [z^n] H(x, z) straight from one row of counts.
double series_coefficient(const UrnSpec& spec, std::span<const BigInt> row, std::size_t n,
                          double x);
// log of the same coefficient for x > 0; stays finite where the value
// overflows double.
double log_series_coefficient(const UrnSpec& spec, std::span<const BigInt> row, std::size_t n,
                              double x);

// (z - A - B_x) y^sigma + B_x y^alpha + A = 0 with A = 1/sigma and
// B_x = (x^{-alpha} - 1)/(alpha + beta). Holds for the start (a0, b0) = (0, 1).
template <class T>
struct AlgebraicEquation {
  UrnSpec spec;
  T a;
  T b_x;
};

// Throws UrnError(UnsupportedInitialConfig) unless (a0, b0) = (0, 1).
AlgebraicEquation<Rational> make_algebraic_equation(const UrnSpec& spec, const Rational& x);
AlgebraicEquation<HighReal> make_algebraic_equation(const UrnSpec& spec, const HighReal& x);

// Coefficients 0..N of the left-hand side with y replaced by the truncated
// series. Every entry vanishes when the series is the true H(x, z).
std::vector<Rational> algebraic_residual(const TruncatedSeries<Rational>& series,
                                         const AlgebraicEquation<Rational>& eq);
std::vector<HighReal> algebraic_residual(const TruncatedSeries<HighReal>& series,
                                         const AlgebraicEquation<HighReal>& eq);

// Tolerance for the high-precision residual check.
inline const HighReal kHighPrecisionResidualTol{"1e-30"};

// [z^n] (1 - sigma z)^{-1/sigma} = sigma^n (1/sigma)_n / n!  (rising factorial).
Rational closed_form_x1_coefficient(const UrnSpec& spec, std::size_t n);

// log of sigma^n n^{1/sigma - 1} / Gamma(1/sigma), the leading asymptotic of
// the coefficient above.
double log_x1_asymptotic(const UrnSpec& spec, double n);

// y_n(1) * Gamma(1/sigma) * n^{1 - 1/sigma} / sigma^n, evaluated from the exact
// history total in log space. Tends to 1 with O(1/n) deviation.
double x1_asymptotic_ratio(const UrnSpec& spec, std::size_t n);

}  // namespace urnlab
