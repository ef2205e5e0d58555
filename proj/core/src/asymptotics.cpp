#include "urnlab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "urnlab/error.hpp"

namespace urnlab {
namespace {

void require_positive_n(std::size_t n) {
  if (n == 0) throw UrnError(ErrorCode::InvalidArgument, "limit-law metrics need n >= 1");
}

}  // namespace

double LimitParams::nu_value() const { return std::sqrt(nu2_value()); }

LimitParams limit_params(const UrnSpec& spec) {
  const std::int64_t a = spec.alpha();
  const std::int64_t b = spec.beta();
  const std::int64_t s = spec.sigma();
  LimitParams p;
  p.mu = Rational(a * s, a + b);
  p.mu.canonicalize();
  p.nu2 = Rational(a * a * a * s, (a + b) * (a + b));
  p.nu2.canonicalize();
  p.sigma = s;
  p.lattice_span = a;
  return p;
}

double mean_correction_magnitude(const UrnSpec& spec) {
  const double a = static_cast<double>(spec.alpha());
  const double b = static_cast<double>(spec.beta());
  const double s = static_cast<double>(spec.sigma());
  return a / (a + b) * std::exp(std::lgamma(1.0 / s) - std::lgamma((a + 1.0) / s));
}

MeanVariancePrediction mean_variance_expansion(const UrnSpec& spec, double n, int sign) {
  if (sign != 1 && sign != -1) throw UrnError(ErrorCode::InvalidArgument, "sign must be +1 or -1");
  const LimitParams p = limit_params(spec);
  const double a = static_cast<double>(spec.alpha());
  const double b = static_cast<double>(spec.beta());
  const double s = static_cast<double>(spec.sigma());
  MeanVariancePrediction out;
  out.sign = sign;
  out.mean = p.mu_value() * n + sign * mean_correction_magnitude(spec) * std::pow(n, a / s) + a / (a + b);
  out.variance = p.nu2_value() * n;
  return out;
}

Complex quasi_power_pn(const LimitParams& params, Complex x, double n) {
  if (x == Complex{0.0, 0.0}) throw UrnError(ErrorCode::InvalidArgument, "x must be nonzero");
  const Complex lx = std::log(x);
  return std::exp(n * (params.mu_value() * lx + 0.5 * params.nu2_value() * lx * lx));
}

Complex quasi_power_pn_at(const LimitParams& params, double u, double n) {
  return std::exp(Complex{-0.5 * params.nu2_value() * u * u, params.mu_value() * u * std::sqrt(n)});
}

Complex probability_generating_function(const LatticeMasses& masses, Complex x) {
  const Complex lx = std::log(x);
  Complex sum{};
  for (std::size_t k = 0; k < masses.mass.size(); ++k) {
    if (masses.mass[k] == 0.0) continue;
    sum += masses.mass[k] * std::exp(static_cast<double>(masses.value(k)) * lx);
  }
  return sum;
}

double standard_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::numbers::sqrt2); }

double standard_normal_density(double t) {
  return std::exp(-0.5 * t * t) / std::sqrt(2.0 * std::numbers::pi);
}

double gaussian_cdf_error(const LatticeMasses& masses, const LimitParams& params) {
  require_positive_n(masses.n);
  const double n = static_cast<double>(masses.n);
  const double centre = params.mu_value() * n;
  const double scale = params.nu_value() * std::sqrt(n);
  double cumulative = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < masses.mass.size(); ++k) {
    const double t = (static_cast<double>(masses.value(k)) - centre) / scale;
    const double phi = standard_normal_cdf(t);
    worst = std::max(worst, std::abs(cumulative - phi));
    cumulative += masses.mass[k];
    worst = std::max(worst, std::abs(cumulative - phi));
  }
  return worst;
}

double gaussian_cdf_error(const HistoryTable& table, const LimitParams& params, std::size_t n) {
  return gaussian_cdf_error(exact_distribution(table, n).to_lattice(), params);
}

double local_limit_error(const LatticeMasses& masses, const LimitParams& params) {
  require_positive_n(masses.n);
  const double n = static_cast<double>(masses.n);
  const double centre = params.mu_value() * n;
  const double scale = params.nu_value() * std::sqrt(n);
  const double span = static_cast<double>(masses.step);
  auto t_of = [&](double value) { return (value - centre) / scale; };
  double worst = 0.0;
  for (std::size_t k = 0; k < masses.mass.size(); ++k) {
    const double lo = t_of(static_cast<double>(masses.value(k)));
    const double hi = t_of(static_cast<double>(masses.value(k)) + span);
    const double c = scale * masses.mass[k] / span;
    // phi is unimodal: its max on [lo, hi] is at the point nearest 0, its
    // infimum at the endpoint farthest from 0.
    const double peak = standard_normal_density(std::clamp(0.0, lo, hi));
    const double floor = std::min(standard_normal_density(lo), standard_normal_density(hi));
    worst = std::max({worst, std::abs(c - peak), std::abs(c - floor)});
  }
  // Off the support the cell mass is 0 and the error is phi itself.
  if (!masses.mass.empty()) {
    const double left = t_of(static_cast<double>(masses.value(0)));
    const double right = t_of(static_cast<double>(masses.value(masses.mass.size() - 1)) + span);
    worst = std::max(worst, standard_normal_density(std::min(left, 0.0)));
    worst = std::max(worst, standard_normal_density(std::max(right, 0.0)));
  }
  return worst;
}

double local_limit_error(const HistoryTable& table, const LimitParams& params, std::size_t n) {
  return local_limit_error(exact_distribution(table, n).to_lattice(), params);
}

RateFunction::RateFunction(const LimitParams& params, double xi)
    : xi_(xi), mu_(params.mu_value()), nu2_(params.nu2_value()) {
  if (!(xi > 0.0 && xi < 1.0)) throw UrnError(ErrorCode::InvalidArgument, "xi must lie in (0, 1)");
  // t = x chi'(x)/chi(x) = mu + nu^2 ln x
  t0_ = mu_ + nu2_ * std::log(x0());
  t1_ = mu_ + nu2_ * std::log(x1());
}

double RateFunction::objective(double x, double t) const {
  const double lx = std::log(x);
  return (mu_ - t) * lx + 0.5 * nu2_ * lx * lx;
}

double RateFunction::argmin(double t) const {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = x0();
  double b = x1();
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = objective(c, t);
  double fd = objective(d, t);
  while (b - a > kGoldenSectionTol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = objective(c, t);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = objective(d, t);
    }
  }
  const double mid = 0.5 * (a + b);
  // Endpoints are candidates too when the minimum is clamped.
  double best = mid;
  for (double candidate : {x0(), x1()}) {
    if (objective(candidate, t) < objective(best, t)) best = candidate;
  }
  return best;
}

double RateFunction::eval(double t) const {
  const double slack = 1e-12 * std::max(1.0, std::abs(t));
  if (!(t >= t0_ - slack && t <= t1_ + slack)) {
    throw UrnError(ErrorCode::OutOfInterval, "t outside [t0, t1]");
  }
  return -objective(argmin(t), t);
}

bool RateFunction::interior(double t) const {
  const double y = (t - mu_) / nu2_;
  return y >= std::log(x0()) && y <= std::log(x1());
}

double RateFunction::closed_form(double t) const {
  if (interior(t)) return (t - mu_) * (t - mu_) / (2.0 * nu2_);
  const double y = (t - mu_) / nu2_;
  const double nearer = y < std::log(x0()) ? x0() : x1();
  return -objective(nearer, t);
}

double empirical_tail_exponent(const LogDistribution& dist, const LimitParams& params, double t) {
  require_positive_n(dist.n);
  const double n = static_cast<double>(dist.n);
  const double threshold = t * n;
  const double slack = 1e-9 * n;
  const bool right = t >= params.mu_value();
  double top = -std::numeric_limits<double>::infinity();
  std::vector<double> selected;
  for (std::size_t k = 0; k < dist.log_mass.size(); ++k) {
    const double value = static_cast<double>(dist.first + dist.step * static_cast<std::int64_t>(k));
    const bool in_tail = right ? value >= threshold - slack : value <= threshold + slack;
    if (!in_tail || dist.log_mass[k] == -std::numeric_limits<double>::infinity()) continue;
    selected.push_back(dist.log_mass[k]);
    top = std::max(top, dist.log_mass[k]);
  }
  if (selected.empty()) throw UrnError(ErrorCode::EmptyTail, "no support point in the requested tail");
  double sum = 0.0;
  for (double lm : selected) sum += std::exp(lm - top);
  return -(top + std::log(sum)) / n;
}

}  // namespace urnlab
