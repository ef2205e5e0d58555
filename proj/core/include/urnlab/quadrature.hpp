#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <tuple>
#include <utility>
#include <vector>

#include "urnlab/numeric.hpp"

namespace urnlab {

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on P_m from the Chebyshev-like initial guesses; nodes are
// accurate to a few ulps for m up to a few hundred.
GaussLegendreRule make_gauss_legendre(std::size_t points);

struct AdaptiveSettings {
  std::size_t points = 20;
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  std::size_t initial_panels = 8;
  std::size_t max_panels = 8192;
};

struct AdaptiveResult {
  Complex value{};
  double error_estimate = 0.0;
  // Integral of |f|; the achievable accuracy is about eps times this.
  double abs_mass = 0.0;
  std::size_t panels = 0;
  bool converged = false;
};

template <class F>
Complex gauss_legendre_panel(const F& f, const GaussLegendreRule& rule, double a, double b,
                             double* abs_mass = nullptr) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Complex sum{};
  double mass = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Complex value = f(mid + half * rule.nodes[i]);
    sum += rule.weights[i] * value;
    mass += rule.weights[i] * std::abs(value);
  }
  if (abs_mass != nullptr) *abs_mass = std::abs(half) * mass;
  return half * sum;
}

// Globally adaptive composite Gauss-Legendre: the panel with the largest
// whole-vs-halves discrepancy is bisected until the summed discrepancy drops
// below max(abs_tol, rel_tol * |total|, roundoff floor) or the panel budget
// runs out. The roundoff floor is kRoundoffFactor * eps * integral of |f|.
inline constexpr double kRoundoffFactor = 64.0;

template <class F>
AdaptiveResult integrate_adaptive(const F& f, double a, double b, const GaussLegendreRule& rule,
                                  const AdaptiveSettings& settings) {
  struct Panel {
    double lo;
    double hi;
    Complex value;
    double error;
    double mass;
    bool operator<(const Panel& other) const { return error < other.error; }
  };
  auto evaluate = [&](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    const Complex whole = gauss_legendre_panel(f, rule, lo, hi);
    double left_mass = 0.0;
    double right_mass = 0.0;
    const Complex split = gauss_legendre_panel(f, rule, lo, mid, &left_mass) +
                          gauss_legendre_panel(f, rule, mid, hi, &right_mass);
    return Panel{lo, hi, split, std::abs(whole - split), left_mass + right_mass};
  };

  AdaptiveResult result;
  if (b == a) {
    result.converged = true;
    return result;
  }
  std::priority_queue<Panel> panels;
  const std::size_t initial = settings.initial_panels == 0 ? 1 : settings.initial_panels;
  const double width = (b - a) / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == initial) ? b : lo + width;
    panels.push(evaluate(lo, hi));
  }

  auto totals = [&]() {
    auto copy = panels;
    Complex value{};
    double error = 0.0;
    double mass = 0.0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      mass += copy.top().mass;
      copy.pop();
    }
    return std::tuple{value, error, mass};
  };
  auto threshold = [&](Complex value, double mass) {
    return std::max({settings.abs_tol, settings.rel_tol * std::abs(value),
                     kRoundoffFactor * std::numeric_limits<double>::epsilon() * mass});
  };

  auto [value, error, mass] = totals();
  while (error > threshold(value, mass)) {
    if (panels.size() >= settings.max_panels) {
      result.value = value;
      result.error_estimate = error;
      result.abs_mass = mass;
      result.panels = panels.size();
      return result;
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Panel left = evaluate(worst.lo, mid);
    const Panel right = evaluate(mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    mass += left.mass + right.mass - worst.mass;
    panels.push(left);
    panels.push(right);
    // Running sums drift; resynchronise occasionally.
    if (panels.size() % 256 == 0) std::tie(value, error, mass) = totals();
  }
  std::tie(value, error, mass) = totals();
  result.value = value;
  result.error_estimate = error;
  result.abs_mass = mass;
  result.panels = panels.size();
  result.converged = true;
  return result;
}

}  // namespace urnlab
