#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

namespace urnlab {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

// 100 decimal digits; used where an irrational evaluation point rules out
// exact rationals.
using HighReal = boost::multiprecision::cpp_bin_float_100;

// Natural log of a positive big integer without overflowing a double.
double log_of(const BigInt& value);

// log(num/den) for a positive rational.
double log_of(const Rational& value);

// "p/q" or "p" (canonical GMP form).
std::string to_string(const Rational& value);
std::string to_string(const BigInt& value);

// Accepts "p/q", integers and finite decimals ("0.25", "-1.5e-3"), converted
// exactly.
Rational parse_rational(const std::string& text);

HighReal to_high_real(const BigInt& value);
HighReal to_high_real(const Rational& value);

}  // namespace urnlab
