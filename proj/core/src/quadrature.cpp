#include "urnlab/quadrature.hpp"

#include <numbers>

#include "urnlab/error.hpp"

namespace urnlab {

GaussLegendreRule make_gauss_legendre(std::size_t points) {
  if (points == 0) throw UrnError(ErrorCode::InvalidArgument, "Gauss-Legendre rule needs >= 1 point");
  GaussLegendreRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const std::size_t half = (points + 1) / 2;
  const double m = static_cast<double>(points);
  for (std::size_t i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (m + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (std::size_t j = 0; j < points; ++j) {
        const double p2 = p1;
        p1 = p0;
        const double jj = static_cast<double>(j);
        p0 = ((2.0 * jj + 1.0) * z * p1 - jj * p2) / (jj + 1.0);
      }
      derivative = m * (z * p0 - p1) / (z * z - 1.0);
      const double step = p0 / derivative;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[points - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * derivative * derivative);
    rule.weights[points - 1 - i] = rule.weights[i];
  }
  return rule;
}

}  // namespace urnlab
