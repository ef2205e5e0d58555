#include "urnlab/series.hpp"

#include <cmath>
#include <string>

#include "urnlab/error.hpp"

namespace urnlab {
namespace {

void require_single_white_start(const UrnSpec& spec) {
  if (!spec.starts_from_single_white()) {
    throw UrnError(ErrorCode::UnsupportedInitialConfig,
                   "the algebraic equation and the x=1 closed form assume (a0, b0) = (0, 1)");
  }
}

template <class T>
T power(T base, std::uint64_t exponent) {
  T result(1);
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Rational power(const Rational& base, std::uint64_t exponent) {
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational from_int(const Rational&, const BigInt& v) { return Rational(v); }
HighReal from_int(const HighReal&, const BigInt& v) { return to_high_real(v); }

bool is_zero(const Rational& v) { return sgn(v) == 0; }
bool is_zero(const HighReal& v) { return v == 0; }

template <class T>
TruncatedSeries<T> series_impl(const HistoryTable& table, const T& x, std::size_t order) {
  if (order > table.n_max()) {
    throw UrnError(ErrorCode::OrderExceedsTable, "order " + std::to_string(order) +
                                                     " exceeds table n_max " +
                                                     std::to_string(table.n_max()));
  }
  if (is_zero(x)) throw UrnError(ErrorCode::InvalidArgument, "x must be nonzero");
  const UrnSpec& spec = table.spec();
  const T x_alpha = power(x, static_cast<std::uint64_t>(spec.alpha()));
  TruncatedSeries<T> out{spec, x, {}};
  out.coeffs.reserve(order + 1);
  BigInt factorial(1);
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) factorial *= static_cast<unsigned long>(n);
    const auto row = table.row(n);
    // Horner in x^alpha over k, then the common factor x^{a0 + alpha n}.
    T acc(0);
    for (std::size_t k = row.size(); k-- > 0;) acc = acc * x_alpha + from_int(x, row[k]);
    acc *= power(x, static_cast<std::uint64_t>(spec.black(static_cast<std::int64_t>(n), 0)));
    acc /= from_int(x, factorial);
    out.coeffs.push_back(acc);
  }
  return out;
}

template <class T>
std::vector<T> truncated_product(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> out(a.size(), T(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

template <class T>
std::vector<T> truncated_power(const std::vector<T>& base, std::uint64_t exponent) {
  std::vector<T> result(base.size(), T(0));
  result[0] = T(1);
  std::vector<T> square = base;
  while (exponent > 0) {
    if (exponent & 1U) result = truncated_product(result, square);
    exponent >>= 1U;
    if (exponent > 0) square = truncated_product(square, square);
  }
  return result;
}

template <class T>
std::vector<T> residual_impl(const TruncatedSeries<T>& series, const AlgebraicEquation<T>& eq) {
  require_single_white_start(series.spec);
  const auto& y = series.coeffs;
  const auto y_sigma = truncated_power(y, static_cast<std::uint64_t>(series.spec.sigma()));
  const auto y_alpha = truncated_power(y, static_cast<std::uint64_t>(series.spec.alpha()));
  std::vector<T> out(y.size(), T(0));
  for (std::size_t j = 0; j < y.size(); ++j) {
    T r = -(eq.a + eq.b_x) * y_sigma[j] + eq.b_x * y_alpha[j];
    if (j > 0) r += y_sigma[j - 1];
    if (j == 0) r += eq.a;
    out[j] = r;
  }
  return out;
}

template <class T>
AlgebraicEquation<T> equation_impl(const UrnSpec& spec, const T& x) {
  require_single_white_start(spec);
  if (is_zero(x)) throw UrnError(ErrorCode::InvalidArgument, "x must be nonzero");
  const T x_alpha = power(x, static_cast<std::uint64_t>(spec.alpha()));
  const T a = T(1) / T(spec.sigma());
  const T b_x = (T(1) / x_alpha - T(1)) / T(spec.alpha() + spec.beta());
  return AlgebraicEquation<T>{spec, a, b_x};
}

}  // namespace

TruncatedSeries<Rational> series_from_table(const HistoryTable& table, const Rational& x,
                                            std::size_t order) {
  return series_impl(table, x, order);
}

TruncatedSeries<HighReal> series_from_table(const HistoryTable& table, const HighReal& x,
                                            std::size_t order) {
  return series_impl(table, x, order);
}

double series_coefficient(const UrnSpec& spec, std::span<const BigInt> row, std::size_t n,
                          double x) {
  if (x == 0.0) throw UrnError(ErrorCode::InvalidArgument, "x must be nonzero");
  // Summed in log space with a common offset; counts overflow double quickly.
  const double log_abs_x = std::log(std::abs(x));
  const double log_fact = std::lgamma(static_cast<double>(n) + 1.0);
  std::vector<double> logs;
  std::vector<int> signs;
  double top = -INFINITY;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (sgn(row[k]) == 0) continue;
    const std::int64_t black = spec.black(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k));
    logs.push_back(log_of(row[k]) + static_cast<double>(black) * log_abs_x - log_fact);
    signs.push_back((x < 0 && (black % 2 != 0)) ? -1 : 1);
    top = std::max(top, logs.back());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) sum += signs[i] * std::exp(logs[i] - top);
  return sum * std::exp(top);
}

double log_series_coefficient(const UrnSpec& spec, std::span<const BigInt> row, std::size_t n,
                              double x) {
  if (!(x > 0.0)) throw UrnError(ErrorCode::InvalidArgument, "log coefficient needs x > 0");
  const double log_x = std::log(x);
  double top = -INFINITY;
  std::vector<double> logs;
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (sgn(row[k]) == 0) continue;
    const std::int64_t black = spec.black(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k));
    logs.push_back(log_of(row[k]) + static_cast<double>(black) * log_x);
    top = std::max(top, logs.back());
  }
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return top + std::log(sum) - std::lgamma(static_cast<double>(n) + 1.0);
}

TruncatedSeries<double> series_from_table(const HistoryTable& table, double x, std::size_t order) {
  if (order > table.n_max()) {
    throw UrnError(ErrorCode::OrderExceedsTable, "order " + std::to_string(order) +
                                                     " exceeds table n_max " +
                                                     std::to_string(table.n_max()));
  }
  TruncatedSeries<double> out{table.spec(), x, {}};
  for (std::size_t n = 0; n <= order; ++n) {
    out.coeffs.push_back(series_coefficient(table.spec(), table.row(n), n, x));
  }
  return out;
}

AlgebraicEquation<Rational> make_algebraic_equation(const UrnSpec& spec, const Rational& x) {
  return equation_impl(spec, x);
}

AlgebraicEquation<HighReal> make_algebraic_equation(const UrnSpec& spec, const HighReal& x) {
  return equation_impl(spec, x);
}

std::vector<Rational> algebraic_residual(const TruncatedSeries<Rational>& series,
                                         const AlgebraicEquation<Rational>& eq) {
  return residual_impl(series, eq);
}

std::vector<HighReal> algebraic_residual(const TruncatedSeries<HighReal>& series,
                                         const AlgebraicEquation<HighReal>& eq) {
  return residual_impl(series, eq);
}

Rational closed_form_x1_coefficient(const UrnSpec& spec, std::size_t n) {
  require_single_white_start(spec);
  // sigma^n (1/sigma)(1/sigma + 1)...(1/sigma + n - 1) / n!
  const Rational inv_sigma(1, spec.sigma());
  Rational value(1);
  for (std::size_t m = 0; m < n; ++m) {
    value *= Rational(spec.sigma()) * (inv_sigma + Rational(static_cast<long>(m)));
    value /= Rational(static_cast<long>(m + 1));
  }
  value.canonicalize();
  return value;
}

double log_x1_asymptotic(const UrnSpec& spec, double n) {
  const double sigma = static_cast<double>(spec.sigma());
  return n * std::log(sigma) + (1.0 / sigma - 1.0) * std::log(n) - std::lgamma(1.0 / sigma);
}

double x1_asymptotic_ratio(const UrnSpec& spec, std::size_t n) {
  require_single_white_start(spec);
  if (n == 0) throw UrnError(ErrorCode::InvalidArgument, "asymptotic ratio needs n >= 1");
  BigInt factorial;
  mpz_fac_ui(factorial.get_mpz_t(), static_cast<unsigned long>(n));
  const double log_yn = log_of(total_histories(spec, n)) - log_of(factorial);
  return std::exp(log_yn - log_x1_asymptotic(spec, static_cast<double>(n)));
}

}  // namespace urnlab
