#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "urnlab/numeric.hpp"
#include "urnlab/quadrature.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

// Distance below which a point counts as sitting on a zero of the h_x
// denominator.
inline constexpr double kPoleTolerance = 1e-8;

// The pair (h_x, a_x) whose product a_x h_x^{n+1}, integrated around w = 0,
// yields [z^n] H(x, z) / sigma^{n+1}. With v = 1 - w and c = sigma (x^{-alpha} - 1)/(alpha + beta):
//   h_x(w) = 1 / (1 + c - v^{alpha+beta} (c + v^alpha))
//   a_x(w) = v^{alpha+beta-2} (x^{-alpha} - 1 + v^alpha)
// Only integer powers appear, so neither factor has a branch cut.
class Integrand {
 public:
  // Throws UrnError(InvalidArgument) for x == 0.
  Integrand(const UrnSpec& spec, Complex x);

  const UrnSpec& spec() const noexcept { return spec_; }
  Complex x() const noexcept { return x_; }
  // x^{-alpha} - 1
  Complex shift() const noexcept { return shift_; }
  // sigma (x^{-alpha} - 1) / (alpha + beta)
  Complex scaled_shift() const noexcept { return scaled_shift_; }

  Complex denominator(Complex w) const;

  struct Value {
    Complex h;
    Complex a;
  };
  // Throws UrnError(PoleHit) when |denominator(w)| < kPoleTolerance.
  Value eval(Complex w) const;
  Complex h(Complex w) const { return eval(w).h; }
  // h'_x(w) = -sigma h_x^2 v^{alpha+beta-1} (x^{-alpha} - 1 + v^alpha)
  Complex h_derivative(Complex w) const;

  // The sigma zeros of the denominator (w = 0 among them), by companion-matrix
  // eigenvalues of the polynomial in v.
  const std::vector<Complex>& poles() const noexcept { return poles_; }

 private:
  UrnSpec spec_;
  Complex x_;
  Complex shift_;
  Complex scaled_shift_;
  std::vector<Complex> poles_;
};

struct SaddlePoint {
  Complex w;
  int multiplicity = 1;
  // |h'_x(w)| / |h_x(w)|^2
  double derivative_residual = 0.0;
};

// w = 1 with multiplicity alpha + beta - 1, plus the alpha points w = 1 - gamma
// with gamma^alpha = 1 - x^{-alpha}. At x = 1 everything collapses onto w = 1.
struct SaddleSet {
  SaddlePoint main;
  std::vector<SaddlePoint> secondary;

  int total_multiplicity() const;
  // Largest distance from a secondary point to w = 1.
  double spread() const;
};

SaddleSet find_saddle_points(const Integrand& integrand);

// Two rays w = 1 + (t/n)^{1/sigma} e^{+-i pi (sigma-1)/sigma}, t in [0, t_max],
// closed by the arc |w - 1| = (t_max/n)^{1/sigma} that sweeps across w = 0.
struct ContourSpec {
  std::size_t n = 1;
  std::int64_t sigma = 3;
  double t_max = 1.0;
  double ray_angle = 0.0;
  AdaptiveSettings quadrature{};
  double residue_rel_tol = 1e-13;

  double arc_radius() const;
  Complex ray_point(double t, int sign) const;
};

// t_max = max(n^2, 2^sigma n); the floor keeps the arc (radius >= 2) clear of
// the unit-modulus poles at small n.
ContourSpec standard_contour(const UrnSpec& spec, std::size_t n);

struct EnclosedPole {
  Complex w;
  Complex residue;  // scaled like the segments
};

// Segment integrals (1/(2 pi i)) int a_x h_x^{n+1} dw, each multiplied by
// exp(-log_scale) so that large n does not overflow:
//   log_scale = (n + 1) (log sigma - log |1 + c|),  |h_x(1)| = 1/|1 + c|.
struct ContourResult {
  std::size_t n = 0;
  double log_scale = 0.0;
  Complex upper_ray{};
  Complex lower_ray{};
  Complex arc{};
  // Other poles of h_x that fall inside the contour. Their residues are
  // subtracted so that only the residue at w = 0 remains.
  std::vector<EnclosedPole> enclosed;
  std::size_t panels = 0;
  // Integral of |integrand| |dw| / 2 pi over the whole contour.
  double abs_mass = 0.0;

  Complex enclosed_correction() const;
  Complex scaled_total() const;
  Complex coefficient() const;
  double log_abs_coefficient() const;
  // |segment| / |scaled_total|
  double relative(Complex segment) const;
  // abs_mass / |scaled_total|; the relative error is roughly eps times this.
  double condition() const;
};

// Throws UrnError(ContourCrossesPole) when a node comes within kPoleTolerance
// of a pole or w = 1 is itself a pole, UrnError(QuadratureNotConverged) when a
// segment exhausts its panel budget.
ContourResult contour_coefficient(const Integrand& integrand, const ContourSpec& contour);

// Contribution of t in [t_cut, t_max] on both rays, in the units of `result`.
Complex ray_tail(const Integrand& integrand, const ContourSpec& contour,
                 const ContourResult& result, double t_cut);

// n log h_x(w) - (mu i u sqrt(n) - nu^2 u^2 / 2 - t) at x = e^{iu/sqrt(n)} and w
// on the upper ray at parameter t.
Complex hx_power_residual(const UrnSpec& spec, double n, double t, double u);

// |residual| / (t^{(alpha+beta)/sigma} u n^{-beta/(2 sigma)} + n^{-1/2} (u^3 + u t))
// at each n; k is the largest ratio, an empirical stand-in for the unknown
// constant of the expansion.
struct ExpansionFit {
  std::vector<double> n;
  std::vector<double> ratio;
  double k = 0.0;
};
ExpansionFit fit_expansion_constant(const UrnSpec& spec, std::span<const double> ns, double t, double u);

struct ContourSample {
  int segment = 0;  // 1 upper ray, 2 lower ray, 3 arc
  double parameter = 0.0;  // t on the rays, angle on the arc
  Complex w{};
  Complex h{};
  double abs_h_pow_n = 0.0;
};
std::vector<ContourSample> sample_contour(const Integrand& integrand, const ContourSpec& contour,
                                          std::size_t per_segment);

struct SurfaceSample {
  Complex w{};
  Complex h{};  // NaN components at poles
};
std::vector<SurfaceSample> sample_surface(const Integrand& integrand, Complex lower_left,
                                          Complex upper_right, std::size_t nx, std::size_t ny);

}  // namespace urnlab
