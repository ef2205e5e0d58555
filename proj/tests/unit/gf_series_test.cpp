#include <doctest.h>

#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "test_support.hpp"

using namespace urnlab;
using urnlab::test::a11;
using urnlab::test::a32;
using urnlab::test::rational;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const UrnError& e) {
    return e.code();
  }
  FAIL("expected UrnError");
  return ErrorCode::InvalidArgument;
}

bool all_zero(const std::vector<Rational>& residual) {
  for (const auto& r : residual) {
    if (r != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("series coefficients at x = 1 and x = 2") {
  const HistoryTable table = build_history_table(a11(), 3);
  const auto s = series_from_table(table, Rational(1), 3);
  REQUIRE(s.order() == 3);
  CHECK(s.coeffs[0] == 1);
  CHECK(s.coeffs[1] == 1);
  CHECK(s.coeffs[2] == 2);
  CHECK(s.coeffs[3] == rational(14, 3));

  const auto s0 = series_from_table(table, Rational(1), 0);
  CHECK(s0.coeffs.size() == 1);
  CHECK(s0.coeffs[0] == 1);

  // (3 * 2^2 + 1 * 2^3) / 2!
  CHECK(series_from_table(table, Rational(2), 2).coeffs[2] == 10);
  CHECK(series_from_table(table, 2.0, 2).coeffs[2] == doctest::Approx(10.0));
  CHECK(series_coefficient(a11(), table.row(2), 2, 2.0) == doctest::Approx(10.0));
  CHECK(log_series_coefficient(a11(), table.row(2), 2, 2.0) == doctest::Approx(std::log(10.0)).epsilon(1e-15));
}

TEST_CASE("log coefficient beyond double range") {
  const std::size_t n = 1000;
  const HistoryRow row = history_row(a11(), n);
  // x = 1: log(total / n!)
  BigInt factorial;
  mpz_fac_ui(factorial.get_mpz_t(), n);
  const double expected = log_of(total_histories(a11(), n)) - log_of(factorial);
  CHECK(log_series_coefficient(a11(), row, n, 1.0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(std::isinf(series_coefficient(a11(), row, n, 2.0)));
  CHECK(std::isfinite(log_series_coefficient(a11(), row, n, 2.0)));
  CHECK(code_of([&] { log_series_coefficient(a11(), row, n, -1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("series errors") {
  const HistoryTable table = build_history_table(a11(), 3);
  CHECK(code_of([&] { series_from_table(table, Rational(1), 4); }) == ErrorCode::OrderExceedsTable);
  CHECK(code_of([&] { series_from_table(table, Rational(0), 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { make_algebraic_equation(validate_urn(1, 1, 1, 1), Rational(1)); }) ==
        ErrorCode::UnsupportedInitialConfig);
  CHECK(code_of([&] { closed_form_x1_coefficient(validate_urn(1, 1, 2, 1), 3); }) ==
        ErrorCode::UnsupportedInitialConfig);
}

TEST_CASE("series at x = 1 counts all histories") {
  for (auto spec : {a11(), a32(), validate_urn(2, 1, 3, 2)}) {
    const HistoryTable table = build_history_table(spec, 15);
    const auto s = series_from_table(table, Rational(1), 15);
    BigInt factorial = 1;
    for (std::size_t n = 0; n <= 15; ++n) {
      if (n > 0) factorial *= static_cast<long>(n);
      CHECK(s.coeffs[n] * factorial == Rational(total_histories(spec, n)));
    }
  }
}

TEST_CASE("algebraic equation at x = 1 has no shift") {
  const auto eq = make_algebraic_equation(a32(), Rational(1));
  CHECK(eq.a == rational(1, 8));
  CHECK(eq.b_x == 0);
  const auto eq2 = make_algebraic_equation(a11(), Rational(2));
  CHECK(eq2.b_x == rational(-1, 4));
}

TEST_CASE("algebraic residual vanishes exactly through order 20") {
  for (auto spec : {a11(), a32(), validate_urn(2, 1, 0, 1), validate_urn(1, 3, 0, 1)}) {
    const HistoryTable table = build_history_table(spec, 20);
    for (const Rational& x : {rational(1, 2), rational(1), rational(2), rational(3)}) {
      const auto residual = algebraic_residual(series_from_table(table, x, 20), make_algebraic_equation(spec, x));
      CHECK(residual.size() == 21);
      CHECK(all_zero(residual));
    }
  }
}

TEST_CASE("algebraic residual detects a corrupted coefficient") {
  const HistoryTable table = build_history_table(a11(), 10);
  auto series = series_from_table(table, rational(2), 10);
  series.coeffs[7] += rational(1, 1000000);
  const auto residual = algebraic_residual(series, make_algebraic_equation(a11(), rational(2)));
  for (std::size_t i = 0; i < 7; ++i) CHECK(residual[i] == 0);
  CHECK(residual[7] != 0);
}

TEST_CASE("high-precision residual at an irrational point") {
  const HistoryTable table = build_history_table(a32(), 20);
  const HighReal x = boost::multiprecision::sqrt(HighReal(2));
  const auto residual = algebraic_residual(series_from_table(table, x, 20), make_algebraic_equation(a32(), x));
  for (const auto& r : residual) CHECK(boost::multiprecision::abs(r) < kHighPrecisionResidualTol);

  auto corrupted = series_from_table(table, x, 20);
  corrupted.coeffs[5] *= HighReal("1.0000000001");
  const auto bad = algebraic_residual(corrupted, make_algebraic_equation(a32(), x));
  CHECK(boost::multiprecision::abs(bad[5]) > kHighPrecisionResidualTol);
}

TEST_CASE("closed form at x = 1") {
  CHECK(closed_form_x1_coefficient(a11(), 0) == 1);
  CHECK(closed_form_x1_coefficient(a11(), 2) == 2);
  CHECK(closed_form_x1_coefficient(a11(), 3) == rational(14, 3));
  for (auto spec : {a11(), a32()}) {
    const HistoryTable table = build_history_table(spec, 20);
    const auto s = series_from_table(table, Rational(1), 20);
    for (std::size_t n = 0; n <= 20; ++n) CHECK(closed_form_x1_coefficient(spec, n) == s.coeffs[n]);
  }
}

TEST_CASE("asymptotic ratio at x = 1 approaches one like 1/n") {
  for (auto spec : {a11(), a32()}) {
    double previous = 1.0;
    for (std::size_t n : {100u, 1000u, 10000u}) {
      const double ratio = x1_asymptotic_ratio(spec, n);
      const double gap = std::abs(ratio - 1.0);
      CHECK(gap <= 5.0 / static_cast<double>(n));
      CHECK(gap < previous);
      previous = gap;
    }
  }
}

TEST_CASE("log asymptotic form uses the exponent 1/sigma - 1") {
  // sigma^n n^{1/sigma - 1} / Gamma(1/sigma) at sigma = 3, n = 1000
  const double n = 1000.0;
  const double expected = n * std::log(3.0) + (1.0 / 3.0 - 1.0) * std::log(n) - std::lgamma(1.0 / 3.0);
  CHECK(log_x1_asymptotic(a11(), n) == doctest::Approx(expected).epsilon(1e-14));
  // The exact ratio at the smallest useful n, from the Gamma-function form of the rising factorial.
  const double exact = std::lgamma(n + 1.0 / 3.0) - std::lgamma(1.0 / 3.0) - std::lgamma(n + 1.0) + n * std::log(3.0);
  CHECK(std::exp(exact - log_x1_asymptotic(a11(), n)) == doctest::Approx(x1_asymptotic_ratio(a11(), 1000)).epsilon(1e-10));
}
