// Acceptance ladder. One PASS/FAIL line per criterion; exit status 1 if any
// criterion fails. Tolerances are fixed here and nowhere else.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/core.h>

#include "urnlab/urnlab.hpp"

using namespace urnlab;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

UrnSpec a11() { return validate_urn(1, 1, 0, 1); }
UrnSpec a32() { return validate_urn(3, 2, 0, 1); }
std::string name(const UrnSpec& s) { return fmt::format("A({},{})", s.alpha(), s.beta()); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Binomial expansion of (1 - sigma z)^{-1/sigma}: coefficient n is
// prod_{j<n} (1 + sigma j) / n!, built independently of the DP and the
// library's closed form.
Rational binomial_coefficient_x1(std::int64_t sigma, std::size_t n) {
  Rational c(1);
  for (std::size_t j = 0; j < n; ++j) {
    c *= Rational(1 + sigma * static_cast<std::int64_t>(j), static_cast<long>(j + 1));
    c.canonicalize();
  }
  return c;
}

Verdict oracle_equivalence() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (const UrnSpec& spec : {a11(), a32()}) {
    const HistoryTable table = build_history_table(spec, 8);
    for (std::size_t n = 0; n <= 8; ++n) {
      const HistoryRow brute = brute_force_histories(spec, n);
      const auto row = table.row(n);
      v.require(std::equal(row.begin(), row.end(), brute.begin(), brute.end()),
                fmt::format("{} row {} differs", name(spec), n));
    }
  }
  const double t = seconds_since(start);
  v.require(t < 10.0, fmt::format("runtime {:.2f}s >= 10s", t));
  v.note(fmt::format("n<=8 both urns, {:.3f}s", t));
  return v;
}

Verdict algebraic_identity() {
  Verdict v;
  const auto start = std::chrono::steady_clock::now();
  for (const UrnSpec& spec : {a11(), a32()}) {
    const HistoryTable table = build_history_table(spec, 20);
    for (const char* text : {"1/2", "1", "2"}) {
      const Rational x = parse_rational(text);
      const auto residual = algebraic_residual(series_from_table(table, x, 20), make_algebraic_equation(spec, x));
      const bool zero = std::all_of(residual.begin(), residual.end(), [](const Rational& r) { return r == 0; });
      v.require(zero && residual.size() == 21, fmt::format("{} x={} residual nonzero", name(spec), text));
    }
  }
  const double t = seconds_since(start);
  v.require(t < 30.0, fmt::format("runtime {:.2f}s >= 30s", t));
  v.note(fmt::format("N=20, x in {{1/2,1,2}}, {:.3f}s", t));
  return v;
}

Verdict closed_form_x1() {
  Verdict v;
  for (const UrnSpec& spec : {a11(), a32()}) {
    const HistoryTable table = build_history_table(spec, 20);
    const auto series = series_from_table(table, Rational(1), 20);
    for (std::size_t n = 0; n <= 20; ++n) {
      v.require(series.coeffs[n] == binomial_coefficient_x1(spec.sigma(), n),
                fmt::format("{} coefficient {} differs", name(spec), n));
    }
    for (std::size_t n : {100, 1000, 10000}) {
      // log y_n(1) = sum log(1 + sigma j) - log n!, in doubles.
      double log_y = -std::lgamma(static_cast<double>(n) + 1.0);
      for (std::size_t j = 0; j < n; ++j) log_y += std::log1p(static_cast<double>(spec.sigma() * j));
      const double s = static_cast<double>(spec.sigma());
      const double nn = static_cast<double>(n);
      const double ratio = std::exp(log_y + std::lgamma(1.0 / s) + (1.0 - 1.0 / s) * std::log(nn) - nn * std::log(s));
      const double bound = 5.0 / nn;
      v.require(std::abs(ratio - 1.0) <= bound, fmt::format("{} n={} ratio {:.6g}", name(spec), n, ratio));
      v.require(std::abs(x1_asymptotic_ratio(spec, n) - ratio) < 1e-9,
                fmt::format("{} n={} library ratio disagrees", name(spec), n));
      if (n == 10000) v.note(fmt::format("{} ratio(1e4)-1 = {:.3g}", name(spec), ratio - 1.0));
    }
  }
  return v;
}

Verdict contour_quadrature() {
  Verdict v;
  double worst = 0.0;
  for (const UrnSpec& spec : {a11(), a32()}) {
    std::vector<std::size_t> ns;
    for (std::size_t n = 1; n <= 30; ++n) ns.push_back(n);
    const auto rows = history_rows(spec, ns);
    for (double x : {1.0, 2.0}) {
      const Integrand integrand(spec, Complex{x, 0.0});
      for (std::size_t n = 1; n <= 30; ++n) {
        try {
          const ContourResult r = contour_coefficient(integrand, standard_contour(spec, n));
          const double exact_log = log_series_coefficient(spec, rows.at(n), n, x);
          const Complex ratio = std::polar(std::exp(r.log_abs_coefficient() - exact_log), std::arg(r.scaled_total()));
          const double err = std::abs(ratio - 1.0);
          worst = std::max(worst, err);
          v.require(err < 1e-6, fmt::format("{} x={} n={} rel {:.3g}", name(spec), x, n, err));
        } catch (const UrnError& e) {
          v.require(false, fmt::format("{} x={} n={}: {}", name(spec), x, n, e.what()));
        }
      }
    }
  }
  v.note(fmt::format("max rel err n<=30: {:.3g}", worst));

  for (const UrnSpec& spec : {a11(), a32()}) {
    for (double x : {1.0, 2.0}) {
      const Integrand integrand(spec, Complex{x, 0.0});
      for (std::size_t n : {50, 100}) {
        try {
          const ContourSpec contour = standard_contour(spec, n);
          const ContourResult r = contour_coefficient(integrand, contour);
          const double t_cut = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(spec.sigma() + 1));
          const double arc = r.relative(r.arc);
          const double tail = r.relative(ray_tail(integrand, contour, r, t_cut));
          v.require(arc < 1e-8, fmt::format("{} x={} n={} arc {:.3g}", name(spec), x, n, arc));
          v.require(tail < 1e-8, fmt::format("{} x={} n={} tail {:.3g}", name(spec), x, n, tail));
        } catch (const UrnError& e) {
          v.require(false, fmt::format("{} x={} n={}: {}", name(spec), x, n, e.what()));
        }
      }
    }
  }
  return v;
}

Verdict moments() {
  Verdict v;
  const UrnSpec spec = a11();
  const MomentTrajectory m = moment_recurrence(spec, 1000);
  for (std::size_t n : {200, 500, 1000}) {
    const double nn = static_cast<double>(n);
    const double scaled = (m.mean[n].get_d() - 1.5 * nn - 0.5) / std::cbrt(nn);
    v.require(std::abs(scaled + 0.98917) <= 0.01, fmt::format("n={} scaled mean gap {:.5f}", n, scaled));
    if (n == 1000) v.note(fmt::format("scaled mean gap(1000) {:.5f}", scaled));
  }
  const double ratio = m.variance[1000].get_d() / 1000.0;
  v.require(std::abs(ratio - 0.75) <= 0.02 * 0.75, fmt::format("Var/n at 1000 = {:.4f} (target 0.75 +- 2%)", ratio));
  return v;
}

// max err * sqrt(n) over the ladder must stay within this factor of the first
// rung; see README.
constexpr double kBoundedFactor = 1.5;

void rate_ladder(Verdict& v, const std::string& label, const std::vector<std::size_t>& ns,
                 const std::vector<double>& errors) {
  std::string shown;
  const double first = errors.front() * std::sqrt(static_cast<double>(ns.front()));
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double scaled = errors[i] * std::sqrt(static_cast<double>(ns[i]));
    shown += fmt::format("{}{:.3f}", i ? "," : "", scaled);
    v.require(scaled <= kBoundedFactor * first,
              fmt::format("{} n={} err*sqrt(n) {:.3f} > {:.1f} x {:.3f}", label, ns[i], scaled, kBoundedFactor, first));
    if (i > 0) v.require(errors[i] < errors[i - 1], fmt::format("{} not decreasing at n={}", label, ns[i]));
  }
  v.note(fmt::format("{} err*sqrt(n) = [{}]", label, shown));
}

Verdict gaussian_law() {
  Verdict v;
  const std::vector<std::size_t> ns{25, 100, 400};
  for (const UrnSpec& spec : {a11(), a32()}) {
    const LimitParams p = limit_params(spec);
    std::vector<double> errors;
    for (auto& [n, row] : history_rows(spec, ns)) {
      errors.push_back(gaussian_cdf_error(ExactDistribution(spec, n, row).to_lattice(), p));
    }
    rate_ladder(v, name(spec), ns, errors);
  }
  return v;
}

Verdict local_law() {
  Verdict v;
  const std::vector<std::size_t> ns{100, 400, 900};
  const UrnSpec spec = a11();
  const LimitParams p = limit_params(spec);
  std::vector<double> errors;
  for (auto& [n, row] : history_rows(spec, ns)) {
    errors.push_back(local_limit_error(ExactDistribution(spec, n, row).to_lattice(), p));
  }
  rate_ladder(v, name(spec), ns, errors);
  return v;
}

Verdict large_deviations() {
  Verdict v;
  const UrnSpec spec = a11();
  const LimitParams p = limit_params(spec);
  const RateFunction rf(p, 0.5);
  // Interior means ln x* = (t - mu)/nu^2 inside [ln x0, ln x1].
  const double lo = p.mu_value() + p.nu2_value() * std::log(rf.x0());
  const double hi = p.mu_value() + p.nu2_value() * std::log(rf.x1());
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = lo + (hi - lo) * (i + 0.5) / 100.0;
    const double expected = (t - p.mu_value()) * (t - p.mu_value()) / (2.0 * p.nu2_value());
    worst = std::max(worst, std::abs(rf.eval(t) - expected));
  }
  v.require(worst <= 1e-10, fmt::format("rate function off by {:.3g}", worst));
  v.note(fmt::format("max |W - closed| {:.2g}", worst));

  const std::vector<std::size_t> ns{500, 2000};
  const auto dists = log_distributions(spec, ns);
  const double target = 0.06;
  const double gap500 = std::abs(empirical_tail_exponent(dists.at(500), p, 1.8) - target);
  const double e2000 = empirical_tail_exponent(dists.at(2000), p, 1.8);
  const double gap2000 = std::abs(e2000 - target);
  v.require(gap2000 <= 0.15 * target, fmt::format("exponent(2000) {:.4f} not within 15% of 0.06", e2000));
  v.require(gap2000 < gap500, fmt::format("gap not shrinking: {:.4f} -> {:.4f}", gap500, gap2000));
  v.note(fmt::format("gap {:.4f} (n=500) -> {:.4f} (n=2000)", gap500, gap2000));
  return v;
}

Verdict quasi_power() {
  Verdict v;
  const UrnSpec spec = a11();
  const LimitParams p = limit_params(spec);
  const std::vector<std::size_t> ns{100, 400, 1600};
  const auto dists = log_distributions(spec, ns);
  std::vector<double> errors;
  for (std::size_t n : ns) {
    const double nn = static_cast<double>(n);
    const Complex exact = probability_generating_function(dists.at(n).to_lattice(), std::polar(1.0, 1.0 / std::sqrt(nn)));
    const Complex predicted = quasi_power_pn_at(p, 1.0, nn);
    errors.push_back(std::abs(exact - predicted) / std::abs(predicted));
  }
  v.require(errors[1] < errors[0] && errors[2] < errors[1], "errors not decreasing");
  const double ratio = errors[2] / errors[0];
  const double bound = std::pow(16.0, -1.0 / 6.0) * 1.5;
  v.require(ratio <= bound, fmt::format("ratio {:.4f} > {:.4f}", ratio, bound));
  v.note(fmt::format("errors {:.4g},{:.4g},{:.4g}; ratio {:.4f} <= {:.4f}", errors[0], errors[1], errors[2], ratio, bound));
  return v;
}

Verdict monte_carlo() {
  Verdict v;
  const std::size_t n = 10;
  const std::size_t trials = 1000000;
  for (const UrnSpec& spec : {a11(), a32()}) {
    const ExactDistribution dist(spec, n, history_row(spec, n));
    const SimulationRun run = simulate(spec, n, trials, 0xacce97);
    double stat = 0.0;
    int cells = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double expected = dist.mass(k).get_d() * static_cast<double>(trials);
      if (expected == 0.0) {
        v.require(run.frequency[k] == 0, fmt::format("{} impossible cell {} hit", name(spec), k));
        continue;
      }
      const double diff = static_cast<double>(run.frequency[k]) - expected;
      stat += diff * diff / expected;
      ++cells;
    }
    const double critical = boost::math::quantile(boost::math::chi_squared(cells - 1), 0.999);
    v.require(stat < critical, fmt::format("{} chi2 {:.2f} >= {:.2f}", name(spec), stat, critical));
    v.note(fmt::format("{} chi2 {:.2f} < {:.2f}", name(spec), stat, critical));

    const SimulationRun again = simulate(spec, n, trials, 0xacce97);
    const SimulationRun threaded = simulate(spec, n, trials, 0xacce97, 4);
    v.require(run == again && run == threaded, fmt::format("{} reruns differ", name(spec)));
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"algebraic identity", algebraic_identity},
      {"closed form at x=1", closed_form_x1},
      {"contour quadrature", contour_quadrature},
      {"moments", moments},
      {"gaussian law", gaussian_law},
      {"local law", local_law},
      {"large deviations", large_deviations},
      {"quasi-power", quasi_power},
      {"monte carlo", monte_carlo},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    if (!v.pass) ++failed;
    fmt::print("{} {:>2} {}: {}\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail);
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
