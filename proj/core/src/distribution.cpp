#include "urnlab/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "urnlab/error.hpp"

namespace urnlab {
namespace {

double ratio_to_double(const BigInt& num, const BigInt& den) {
  if (sgn(num) == 0) return 0.0;
  long en = 0;
  long ed = 0;
  const double mn = mpz_get_d_2exp(&en, num.get_mpz_t());
  const double md = mpz_get_d_2exp(&ed, den.get_mpz_t());
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace

ExactDistribution::ExactDistribution(const UrnSpec& spec, std::size_t n, HistoryRow counts)
    : spec_(spec), n_(n), counts_(std::move(counts)), total_(total_histories(spec, n)) {
  if (counts_.size() != n + 1) {
    throw UrnError(ErrorCode::InvalidArgument, "row for n=" + std::to_string(n) +
                                                   " must have n+1 entries");
  }
}

Rational ExactDistribution::mass(std::size_t k) const {
  Rational q(counts_.at(k), total_);
  q.canonicalize();
  return q;
}

std::map<std::int64_t, Rational> ExactDistribution::masses() const {
  std::map<std::int64_t, Rational> out;
  for (std::size_t k = 0; k < counts_.size(); ++k) {
    if (sgn(counts_[k]) != 0) out.emplace(black(k), mass(k));
  }
  return out;
}

LatticeMasses ExactDistribution::to_lattice() const {
  LatticeMasses out;
  out.n = n_;
  out.first = black(0);
  out.step = spec_.alpha();
  out.mass.reserve(counts_.size());
  for (const BigInt& c : counts_) out.mass.push_back(ratio_to_double(c, total_));
  return out;
}

std::vector<double> ExactDistribution::log_masses() const {
  std::vector<double> out;
  out.reserve(counts_.size());
  const double log_total = log_of(total_);
  for (const BigInt& c : counts_) {
    out.push_back(sgn(c) == 0 ? -std::numeric_limits<double>::infinity() : log_of(c) - log_total);
  }
  return out;
}

ExactDistribution exact_distribution(const HistoryTable& table, std::size_t n) {
  const auto row = table.row(n);
  return ExactDistribution(table.spec(), n, HistoryRow(row.begin(), row.end()));
}

Moments exact_moments(const ExactDistribution& dist) {
  BigInt first(0);
  BigInt second(0);
  for (std::size_t k = 0; k < dist.counts().size(); ++k) {
    const BigInt value(static_cast<long>(dist.black(k)));
    first += dist.counts()[k] * value;
    second += dist.counts()[k] * value * value;
  }
  Rational mean(first, dist.total());
  mean.canonicalize();
  Rational raw_second(second, dist.total());
  raw_second.canonicalize();
  return Moments{mean, raw_second - mean * mean};
}

Moments exact_moments(const HistoryTable& table, std::size_t n) {
  return exact_moments(exact_distribution(table, n));
}

MomentTrajectory moment_recurrence(const UrnSpec& spec, std::size_t n_max) {
  MomentTrajectory out;
  const Rational alpha(spec.alpha());
  Rational m(spec.a0());
  Rational q(spec.a0() * spec.a0());
  for (std::size_t n = 0;; ++n) {
    out.mean.push_back(m);
    out.variance.push_back(q - m * m);
    if (n == n_max) break;
    const Rational s(spec.total_balls(static_cast<std::int64_t>(n)));
    const Rational next_q = q + 2 * alpha * m + alpha * alpha + (2 * alpha * q + 3 * alpha * alpha * m) / s;
    m = m * (1 + alpha / s) + alpha;
    q = next_q;
  }
  return out;
}

ApproxMoments moment_recurrence_approx(const UrnSpec& spec, std::size_t n) {
  const long double alpha = static_cast<long double>(spec.alpha());
  long double m = static_cast<long double>(spec.a0());
  long double q = m * m;
  for (std::size_t j = 0; j < n; ++j) {
    const long double s = static_cast<long double>(spec.total_balls(static_cast<std::int64_t>(j)));
    const long double next_q = q + 2 * alpha * m + alpha * alpha + (2 * alpha * q + 3 * alpha * alpha * m) / s;
    m = m * (1 + alpha / s) + alpha;
    q = next_q;
  }
  return ApproxMoments{static_cast<double>(m), static_cast<double>(q - m * m)};
}

LatticeMasses LogDistribution::to_lattice() const {
  LatticeMasses out;
  out.n = n;
  out.first = first;
  out.step = step;
  out.mass.reserve(log_mass.size());
  for (double lm : log_mass) out.mass.push_back(std::exp(lm));
  return out;
}

std::map<std::size_t, LogDistribution> log_distributions(const UrnSpec& spec,
                                                         std::span<const std::size_t> wanted) {
  std::map<std::size_t, LogDistribution> out;
  if (wanted.empty()) return out;
  const std::size_t last = *std::max_element(wanted.begin(), wanted.end());
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  auto emit = [&](std::size_t n, const std::vector<double>& row) {
    if (std::find(wanted.begin(), wanted.end(), n) == wanted.end()) return;
    out.emplace(n, LogDistribution{n, spec.black(static_cast<std::int64_t>(n), 0), spec.alpha(), row});
  };
  std::vector<double> row{0.0};
  emit(0, row);
  for (std::size_t n = 0; n < last; ++n) {
    const auto sn = static_cast<std::int64_t>(n);
    const double log_total = std::log(static_cast<double>(spec.total_balls(sn)));
    std::vector<double> next(row.size() + 1, kNegInf);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (row[k] == kNegInf) continue;
      const auto sk = static_cast<std::int64_t>(k);
      const auto black = spec.black(sn, sk);
      const auto white = spec.white(sn, sk);
      if (black > 0) next[k + 1] = log_add(next[k + 1], row[k] + std::log(static_cast<double>(black)) - log_total);
      if (white > 0) next[k] = log_add(next[k], row[k] + std::log(static_cast<double>(white)) - log_total);
    }
    row = std::move(next);
    emit(n + 1, row);
  }
  return out;
}

LogDistribution log_distribution(const UrnSpec& spec, std::size_t n) {
  const std::size_t wanted[] = {n};
  return std::move(log_distributions(spec, wanted).at(n));
}

}  // namespace urnlab
