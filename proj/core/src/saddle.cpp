#include "urnlab/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Core>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <unsupported/Eigen/Polynomials>

#include "urnlab/asymptotics.hpp"
#include "urnlab/error.hpp"

namespace urnlab {
namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

using HighComplex = boost::multiprecision::cpp_complex_100;

Complex int_pow(Complex base, std::int64_t exponent) {
  Complex result{1.0, 0.0};
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

// Monic-in-v form of the denominator: v^sigma + c v^{alpha+beta} - (1 + c).
std::vector<Complex> denominator_poles(const UrnSpec& spec, Complex c) {
  const auto sigma = static_cast<Eigen::Index>(spec.sigma());
  const auto ab = static_cast<Eigen::Index>(spec.alpha() + spec.beta());
  Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(sigma + 1);
  coeffs(0) = -(1.0 + c);
  coeffs(ab) += c;
  coeffs(sigma) = 1.0;
  Eigen::PolynomialSolver<Complex, Eigen::Dynamic> solver(coeffs);
  std::vector<Complex> poles;
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
    Complex v = solver.roots()(i);
    // A few Newton steps on the polynomial tighten the eigenvalue estimate.
    for (int iter = 0; iter < 4; ++iter) {
      const Complex p = int_pow(v, sigma) + c * int_pow(v, ab) - (1.0 + c);
      const Complex dp = static_cast<double>(sigma) * int_pow(v, sigma - 1) +
                         c * static_cast<double>(ab) * int_pow(v, ab - 1);
      if (std::abs(dp) < 1e-300) break;
      v -= p / dp;
    }
    poles.push_back(1.0 - v);
  }
  std::sort(poles.begin(), poles.end(),
            [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
  return poles;
}

double distance_to_segment(Complex p, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const double s = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

// a_x h_x^{n+1} / |h_x(1)|^{n+1}, with pole-proximity checks against the
// precomputed zeros of the denominator.
class ScaledIntegrand {
 public:
  ScaledIntegrand(const Integrand& integrand, std::size_t n)
      : integrand_(integrand), power_(static_cast<double>(n) + 1.0) {
    const Complex at_one = 1.0 + integrand.scaled_shift();
    if (std::abs(at_one) < kPoleTolerance) {
      throw UrnError(ErrorCode::ContourCrossesPole, "w = 1 is a pole of h_x for this x");
    }
    log_h_scale_ = -power_ * std::log(std::abs(at_one));
  }

  double log_h_scale() const noexcept { return log_h_scale_; }

  Complex operator()(Complex w) const {
    for (const Complex& p : integrand_.poles()) {
      if (std::abs(w - p) < kPoleTolerance) {
        throw UrnError(ErrorCode::ContourCrossesPole,
                       "quadrature node within tolerance of pole at w=(" +
                           std::to_string(p.real()) + "," + std::to_string(p.imag()) + ")");
      }
    }
    Integrand::Value value;
    try {
      value = integrand_.eval(w);
    } catch (const UrnError& e) {
      throw UrnError(ErrorCode::ContourCrossesPole, e.what());
    }
    const Complex out = value.a * std::exp(power_ * std::log(value.h) - log_h_scale_);
    if (!std::isfinite(out.real()) || !std::isfinite(out.imag())) {
      throw UrnError(ErrorCode::QuadratureNotConverged, "integrand overflow on the contour");
    }
    return out;
  }

 private:
  const Integrand& integrand_;
  double power_;
  double log_h_scale_ = 0.0;
};

Complex integrate_checked(const auto& f, double a, double b, const GaussLegendreRule& rule,
                          const AdaptiveSettings& settings, const char* segment,
                          std::size_t& panels, double* abs_mass = nullptr) {
  const AdaptiveResult r = integrate_adaptive(f, a, b, rule, settings);
  panels += r.panels;
  if (abs_mass != nullptr) *abs_mass += r.abs_mass / (2.0 * kPi);
  if (!r.converged) {
    throw UrnError(ErrorCode::QuadratureNotConverged,
                   std::string(segment) + ": error estimate " + std::to_string(r.error_estimate) +
                       " after " + std::to_string(r.panels) + " panels");
  }
  return r.value;
}

// Integral over the upper (sign=+1) or lower (sign=-1) ray for t in
// [t_from, t_to], oriented away from w = 1 for the upper ray and towards it
// for the lower one. Integrates in s = t^{1/sigma}, which removes the
// t^{1/sigma - 1} endpoint singularity of dw/dt.
Complex ray_integral(const ScaledIntegrand& f, const ContourSpec& contour, int sign,
                     double t_from, double t_to, const GaussLegendreRule& rule,
                     const AdaptiveSettings& settings, std::size_t& panels,
                     double* abs_mass = nullptr) {
  const double inv_sigma = 1.0 / static_cast<double>(contour.sigma);
  const double scale = std::pow(static_cast<double>(contour.n), -inv_sigma);
  const Complex direction = std::polar(1.0, sign * contour.ray_angle);
  auto g = [&](double s) { return f(1.0 + s * scale * direction) * scale * direction; };
  const Complex value = integrate_checked(g, std::pow(t_from, inv_sigma), std::pow(t_to, inv_sigma),
                                          rule, settings, sign > 0 ? "upper ray" : "lower ray", panels,
                                          abs_mass);
  return sign > 0 ? value : -value;
}

// Distance from v = 1 - w to the contour drawn in the v-plane: two segments
// from 0 at angles +-pi/sigma, joined by the arc of radius R through v > 0.
double distance_to_contour_v(Complex v, double half_angle, double radius) {
  const Complex end_up = std::polar(radius, half_angle);
  const Complex end_down = std::polar(radius, -half_angle);
  double d = std::min(distance_to_segment(v, 0.0, end_up), distance_to_segment(v, 0.0, end_down));
  if (std::abs(std::arg(v)) <= half_angle) {
    d = std::min(d, std::abs(std::abs(v) - radius));
  } else {
    d = std::min({d, std::abs(v - end_up), std::abs(v - end_down)});
  }
  return d;
}


HighComplex high_pow(HighComplex base, std::int64_t exponent) {
  HighComplex result{1};
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

// Trapezoidal rule for (1/2 pi i) of the scaled integrand around a circle of
// radius r about p, in 100-digit arithmetic: a pole of h_x has order n + 1 in
// the integrand, and on the circle the principal part dwarfs the residue by
// far more than double precision can absorb. The rule is exact on the
// principal part once m > n + 1 and converges geometrically on the rest.
Complex enclosed_residue(const Integrand& integrand, std::size_t n, double log_h_scale, Complex p,
                         double r, double rel_tol, double reference) {
  const UrnSpec& spec = integrand.spec();
  const std::int64_t ab = spec.alpha() + spec.beta();
  const HighComplex one{1};
  const HighComplex x{integrand.x().real(), integrand.x().imag()};
  const HighComplex shift = one / high_pow(x, spec.alpha()) - one;
  const HighComplex c = shift * HighReal(spec.sigma()) / HighReal(ab);
  const HighComplex centre{p.real(), p.imag()};
  const HighReal radius{r};
  const HighReal scale = boost::multiprecision::exp(HighReal(-log_h_scale));
  const HighReal two_pi = 2 * boost::math::constants::pi<HighReal>();

  auto trapezoid = [&](std::size_t m) {
    HighComplex sum{0};
    for (std::size_t j = 0; j < m; ++j) {
      const HighReal angle = two_pi * HighReal(j) / HighReal(m);
      const HighComplex e{boost::multiprecision::cos(angle), boost::multiprecision::sin(angle)};
      const HighComplex v = one - (centre + radius * e);
      const HighComplex va = high_pow(v, spec.alpha());
      const HighComplex vab = high_pow(v, ab);
      const HighComplex d = one + c - vab * (c + va);
      const HighComplex a = high_pow(v, ab - 2) * (shift + va);
      sum += a / high_pow(d, static_cast<std::int64_t>(n) + 1) * (radius * e);
    }
    const HighComplex mean = sum * scale / HighReal(m);
    return Complex{static_cast<double>(mean.real()), static_cast<double>(mean.imag())};
  };

  std::size_t m = 32;
  while (m <= n + 1) m *= 2;
  Complex previous = trapezoid(m);
  for (m *= 2; m <= (std::size_t{1} << 16); m *= 2) {
    const Complex current = trapezoid(m);
    if (std::abs(current - previous) <= rel_tol * std::max(std::abs(current), reference)) return current;
    previous = current;
  }
  throw UrnError(ErrorCode::QuadratureNotConverged, "residue at enclosed pole did not settle");
}

}  // namespace

Integrand::Integrand(const UrnSpec& spec, Complex x) : spec_(spec), x_(x) {
  if (x == Complex{0.0, 0.0}) throw UrnError(ErrorCode::InvalidArgument, "x must be nonzero");
  shift_ = 1.0 / int_pow(x, spec.alpha()) - 1.0;
  scaled_shift_ = static_cast<double>(spec.sigma()) * shift_ /
                  static_cast<double>(spec.alpha() + spec.beta());
  poles_ = denominator_poles(spec, scaled_shift_);
}

Complex Integrand::denominator(Complex w) const {
  const Complex v = 1.0 - w;
  return 1.0 + scaled_shift_ -
         int_pow(v, spec_.alpha() + spec_.beta()) * (scaled_shift_ + int_pow(v, spec_.alpha()));
}

Integrand::Value Integrand::eval(Complex w) const {
  const Complex d = denominator(w);
  if (std::abs(d) < kPoleTolerance) {
    throw UrnError(ErrorCode::PoleHit, "h_x denominator vanishes at w=(" + std::to_string(w.real()) +
                                           "," + std::to_string(w.imag()) + ")");
  }
  const Complex v = 1.0 - w;
  const Complex a = int_pow(v, spec_.alpha() + spec_.beta() - 2) * (shift_ + int_pow(v, spec_.alpha()));
  return Value{1.0 / d, a};
}

Complex Integrand::h_derivative(Complex w) const {
  const Complex h = eval(w).h;
  const Complex v = 1.0 - w;
  return -static_cast<double>(spec_.sigma()) * h * h *
         int_pow(v, spec_.alpha() + spec_.beta() - 1) * (shift_ + int_pow(v, spec_.alpha()));
}

int SaddleSet::total_multiplicity() const {
  int total = main.multiplicity;
  for (const auto& s : secondary) total += s.multiplicity;
  return total;
}

double SaddleSet::spread() const {
  double out = 0.0;
  for (const auto& s : secondary) out = std::max(out, std::abs(s.w - main.w));
  return out;
}

SaddleSet find_saddle_points(const Integrand& integrand) {
  const UrnSpec& spec = integrand.spec();
  const double sigma = static_cast<double>(spec.sigma());
  // |h'|/|h|^2 = sigma |v|^{alpha+beta-1} |x^{-alpha} - 1 + v^alpha|
  auto residual = [&](Complex w) {
    const Complex v = 1.0 - w;
    return sigma * std::abs(int_pow(v, spec.alpha() + spec.beta() - 1) *
                            (integrand.shift() + int_pow(v, spec.alpha())));
  };
  SaddleSet out;
  out.main = SaddlePoint{Complex{1.0, 0.0}, static_cast<int>(spec.alpha() + spec.beta() - 1), 0.0};
  out.main.derivative_residual = residual(out.main.w);

  // gamma^alpha = 1 - x^{-alpha} = -shift
  const Complex target = -integrand.shift();
  const double radius = std::pow(std::abs(target), 1.0 / static_cast<double>(spec.alpha()));
  const double phase = std::arg(target);
  for (std::int64_t j = 0; j < spec.alpha(); ++j) {
    const Complex gamma =
        std::polar(radius, (phase + 2.0 * kPi * static_cast<double>(j)) / static_cast<double>(spec.alpha()));
    const Complex w = 1.0 - gamma;
    out.secondary.push_back(SaddlePoint{w, 1, residual(w)});
  }
  return out;
}

double ContourSpec::arc_radius() const {
  return std::pow(t_max / static_cast<double>(n), 1.0 / static_cast<double>(sigma));
}

Complex ContourSpec::ray_point(double t, int sign) const {
  const double r = std::pow(t / static_cast<double>(n), 1.0 / static_cast<double>(sigma));
  return 1.0 + std::polar(r, sign * ray_angle);
}

ContourSpec standard_contour(const UrnSpec& spec, std::size_t n) {
  if (n == 0) throw UrnError(ErrorCode::InvalidArgument, "contour needs n >= 1");
  ContourSpec c;
  c.n = n;
  c.sigma = spec.sigma();
  const double nn = static_cast<double>(n);
  c.t_max = std::max(nn * nn, std::pow(2.0, static_cast<double>(spec.sigma())) * nn);
  c.ray_angle = kPi * static_cast<double>(spec.sigma() - 1) / static_cast<double>(spec.sigma());
  return c;
}

Complex ContourResult::enclosed_correction() const {
  Complex sum{};
  for (const auto& p : enclosed) sum -= p.residue;
  return sum;
}

Complex ContourResult::scaled_total() const {
  return upper_ray + lower_ray + arc + enclosed_correction();
}

Complex ContourResult::coefficient() const { return scaled_total() * std::exp(log_scale); }

double ContourResult::log_abs_coefficient() const {
  return std::log(std::abs(scaled_total())) + log_scale;
}

double ContourResult::relative(Complex segment) const {
  return std::abs(segment) / std::abs(scaled_total());
}

double ContourResult::condition() const { return abs_mass / std::abs(scaled_total()); }

ContourResult contour_coefficient(const Integrand& integrand, const ContourSpec& contour) {
  if (contour.n == 0) throw UrnError(ErrorCode::InvalidArgument, "contour needs n >= 1");
  if (contour.sigma != integrand.spec().sigma()) {
    throw UrnError(ErrorCode::InvalidArgument, "contour was built for a different urn");
  }
  const ScaledIntegrand f(integrand, contour.n);
  const GaussLegendreRule rule = make_gauss_legendre(contour.quadrature.points);
  const double radius = contour.arc_radius();
  const double half_angle = kPi / static_cast<double>(contour.sigma);
  if (radius <= 1.0) {
    throw UrnError(ErrorCode::ContourCrossesPole, "arc radius must exceed 1 to enclose w = 0");
  }

  ContourResult out;
  out.n = contour.n;
  out.log_scale = static_cast<double>(contour.n + 1) * std::log(static_cast<double>(contour.sigma)) +
                  f.log_h_scale();

  // Poles on the contour itself, or inside it besides w = 0.
  std::vector<Complex> inside;
  for (const Complex& p : integrand.poles()) {
    const Complex v = 1.0 - p;
    if (distance_to_contour_v(v, half_angle, radius) < kPoleTolerance) {
      throw UrnError(ErrorCode::ContourCrossesPole, "pole lies on the contour");
    }
    if (std::abs(p) < 1e-6) continue;  // w = 0
    if (std::abs(v) < radius && std::abs(std::arg(v)) < half_angle) inside.push_back(p);
  }

  const Complex two_pi_i = 2.0 * kPi * kI;
  out.upper_ray = ray_integral(f, contour, +1, 0.0, contour.t_max, rule, contour.quadrature, out.panels,
                               &out.abs_mass) / two_pi_i;
  out.lower_ray = ray_integral(f, contour, -1, 0.0, contour.t_max, rule, contour.quadrature, out.panels,
                               &out.abs_mass) / two_pi_i;

  AdaptiveSettings arc_settings = contour.quadrature;
  arc_settings.abs_tol = std::max(arc_settings.abs_tol,
                                  arc_settings.rel_tol * std::abs(out.upper_ray + out.lower_ray));
  auto arc_integrand = [&](double phi) {
    const Complex e = std::polar(1.0, phi);
    return f(1.0 + radius * e) * (kI * radius * e);
  };
  out.arc = integrate_checked(arc_integrand, contour.ray_angle, 2.0 * kPi - contour.ray_angle, rule,
                              arc_settings, "arc", out.panels, &out.abs_mass) / two_pi_i;

  // Residues at the extra enclosed poles, by the trapezoidal rule on a small
  // circle.
  const double reference_scale = std::abs(out.upper_ray + out.lower_ray + out.arc);
  for (const Complex& p : inside) {
    double r = distance_to_contour_v(1.0 - p, half_angle, radius);
    for (const Complex& q : integrand.poles()) {
      if (q != p) r = std::min(r, std::abs(q - p));
    }
    r *= 0.5;
    const Complex residue = enclosed_residue(integrand, contour.n, f.log_h_scale(), p, r,
                                             contour.residue_rel_tol, reference_scale);
    out.enclosed.push_back(EnclosedPole{p, residue});
  }
  return out;
}

Complex ray_tail(const Integrand& integrand, const ContourSpec& contour,
                 const ContourResult& result, double t_cut) {
  const ScaledIntegrand f(integrand, contour.n);
  const GaussLegendreRule rule = make_gauss_legendre(contour.quadrature.points);
  AdaptiveSettings settings = contour.quadrature;
  settings.abs_tol = std::max(settings.abs_tol, settings.rel_tol * std::abs(result.scaled_total()));
  std::size_t panels = 0;
  const double from = std::min(t_cut, contour.t_max);
  const Complex two_pi_i = 2.0 * kPi * kI;
  return (ray_integral(f, contour, +1, from, contour.t_max, rule, settings, panels) +
          ray_integral(f, contour, -1, from, contour.t_max, rule, settings, panels)) /
         two_pi_i;
}

Complex hx_power_residual(const UrnSpec& spec, double n, double t, double u) {
  if (n <= 0.0) throw UrnError(ErrorCode::InvalidArgument, "n must be positive");
  const Complex x = std::polar(1.0, u / std::sqrt(n));
  const Integrand integrand(spec, x);
  const double sigma = static_cast<double>(spec.sigma());
  const Complex w = 1.0 + std::polar(std::pow(t / n, 1.0 / sigma), kPi * (sigma - 1.0) / sigma);
  const LimitParams params = limit_params(spec);
  const Complex expected{-params.nu2_value() * u * u / 2.0 - t, params.mu_value() * u * std::sqrt(n)};
  return n * std::log(integrand.h(w)) - expected;
}

ExpansionFit fit_expansion_constant(const UrnSpec& spec, std::span<const double> ns, double t, double u) {
  const double sigma = static_cast<double>(spec.sigma());
  const double ab = static_cast<double>(spec.alpha() + spec.beta());
  const double beta = static_cast<double>(spec.beta());
  ExpansionFit fit;
  for (double n : ns) {
    const double bound = std::pow(t, ab / sigma) * u * std::pow(n, -beta / (2.0 * sigma)) +
                         (u * u * u + u * t) / std::sqrt(n);
    if (!(bound > 0.0)) throw UrnError(ErrorCode::InvalidArgument, "fit needs t >= 0 and u > 0");
    const double ratio = std::abs(hx_power_residual(spec, n, t, u)) / bound;
    fit.n.push_back(n);
    fit.ratio.push_back(ratio);
    fit.k = std::max(fit.k, ratio);
  }
  return fit;
}

std::vector<ContourSample> sample_contour(const Integrand& integrand, const ContourSpec& contour,
                                          std::size_t per_segment) {
  std::vector<ContourSample> out;
  if (per_segment < 2) per_segment = 2;
  const double nn = static_cast<double>(contour.n);
  const double inv_sigma = 1.0 / static_cast<double>(contour.sigma);
  const double s_max = std::pow(contour.t_max, inv_sigma);
  auto push = [&](int segment, double parameter, Complex w) {
    ContourSample sample{segment, parameter, w, {}, 0.0};
    try {
      sample.h = integrand.h(w);
      sample.abs_h_pow_n = std::exp(nn * std::log(std::abs(sample.h)));
    } catch (const UrnError&) {
      sample.h = Complex{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
      sample.abs_h_pow_n = std::numeric_limits<double>::infinity();
    }
    out.push_back(sample);
  };
  for (int sign : {+1, -1}) {
    for (std::size_t i = 0; i < per_segment; ++i) {
      const double s = s_max * static_cast<double>(i) / static_cast<double>(per_segment - 1);
      const double t = std::pow(s, static_cast<double>(contour.sigma));
      push(sign > 0 ? 1 : 2, t, contour.ray_point(t, sign));
    }
  }
  const double radius = contour.arc_radius();
  for (std::size_t i = 0; i < per_segment; ++i) {
    const double phi = contour.ray_angle + (2.0 * kPi - 2.0 * contour.ray_angle) *
                                               static_cast<double>(i) / static_cast<double>(per_segment - 1);
    push(3, phi, 1.0 + std::polar(radius, phi));
  }
  return out;
}

std::vector<SurfaceSample> sample_surface(const Integrand& integrand, Complex lower_left,
                                          Complex upper_right, std::size_t nx, std::size_t ny) {
  if (nx < 2 || ny < 2) throw UrnError(ErrorCode::InvalidArgument, "surface grid needs >= 2 points per axis");
  std::vector<SurfaceSample> out;
  out.reserve(nx * ny);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0; j < ny; ++j) {
    const double im = lower_left.imag() + (upper_right.imag() - lower_left.imag()) *
                                              static_cast<double>(j) / static_cast<double>(ny - 1);
    for (std::size_t i = 0; i < nx; ++i) {
      const double re = lower_left.real() + (upper_right.real() - lower_left.real()) *
                                                static_cast<double>(i) / static_cast<double>(nx - 1);
      const Complex w{re, im};
      const Complex d = integrand.denominator(w);
      out.push_back(SurfaceSample{w, std::abs(d) < kPoleTolerance ? Complex{nan, nan} : 1.0 / d});
    }
  }
  return out;
}

}  // namespace urnlab
