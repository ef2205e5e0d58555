#include "urnlab/numeric.hpp"

#include <cmath>
#include <regex>

#include "urnlab/error.hpp"

namespace urnlab {

double log_of(const BigInt& value) {
  if (sgn(value) <= 0) throw UrnError(ErrorCode::InvalidArgument, "log of non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

double log_of(const Rational& value) {
  return log_of(BigInt(value.get_num())) - log_of(BigInt(value.get_den()));
}

std::string to_string(const Rational& value) { return value.get_str(); }
std::string to_string(const BigInt& value) { return value.get_str(); }

Rational parse_rational(const std::string& text) {
  static const std::regex fraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex decimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
  std::smatch m;
  if (std::regex_match(text, m, fraction)) {
    BigInt den(m[2].str());
    if (den == 0) throw UrnError(ErrorCode::InvalidArgument, "zero denominator in '" + text + "'");
    Rational q(BigInt(m[1].str()), den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(text, m, decimal) && (m[2].length() > 0 || m[3].length() > 0)) {
    const std::string int_part = m[2].length() ? m[2].str() : "0";
    const std::string frac_part = m[3].str();
    BigInt num(int_part + frac_part);
    long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
    exponent -= static_cast<long>(frac_part.size());
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  throw UrnError(ErrorCode::InvalidArgument, "not a rational number: '" + text + "'");
}

HighReal to_high_real(const BigInt& value) { return HighReal(value.get_str()); }

HighReal to_high_real(const Rational& value) {
  return to_high_real(BigInt(value.get_num())) / to_high_real(BigInt(value.get_den()));
}

}  // namespace urnlab
