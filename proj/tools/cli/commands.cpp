#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "urnlab/urnlab.hpp"

namespace urnlab::cli {
namespace {

using ojson = nlohmann::ordered_json;

// Exact rational moments are cheap up to here; beyond it the long double
// recurrence takes over.
constexpr std::size_t kExactMomentLimit = 5000;

ojson urn_json(const UrnSpec& spec) {
  return ojson{{"alpha", spec.alpha()}, {"beta", spec.beta()}, {"a0", spec.a0()},
               {"b0", spec.b0()},       {"sigma", spec.sigma()}, {"rho", to_string(spec.rho())}};
}

ojson params_json(const LimitParams& p) {
  return ojson{{"mu", to_string(p.mu)}, {"nu2", to_string(p.nu2)}, {"mu_value", p.mu_value()},
               {"nu2_value", p.nu2_value()}};
}

Report start(const std::string& command, const UrnSpec& spec) {
  Report r = make_report(command);
  r.json["urn"] = urn_json(spec);
  return r;
}

ojson nullable(std::optional<double> v) { return v ? ojson(*v) : ojson(nullptr); }

std::string nullable_cell(std::optional<double> v) { return v ? cell(*v) : std::string(); }

}  // namespace

Report run_dist(const UrnSpec& spec, const DistOptions& opts, const RowCache& cache) {
  const ExactDistribution dist(spec, opts.n, cache.row(spec, opts.n));
  Report r = start("dist", spec);
  r.json["n"] = opts.n;
  r.json["total"] = to_string(dist.total());
  ojson masses = ojson::object();
  r.columns = {"black", "count", "mass"};
  for (std::size_t k = 0; k < dist.counts().size(); ++k) {
    const BigInt& count = dist.counts()[k];
    if (count == 0) continue;
    const std::string key = std::to_string(dist.black(k));
    masses[key] = to_string(count) + "/" + to_string(dist.total());
    r.rows.push_back({key, to_string(count), cell(dist.mass(k).get_d())});
  }
  r.json["masses"] = std::move(masses);
  return r;
}

Report run_moments(const UrnSpec& spec, const MomentsOptions& opts) {
  const LimitParams params = limit_params(spec);
  Report r = start("moments", spec);
  r.json["params"] = params_json(params);
  r.json["sign"] = opts.sign;
  r.json["correction_magnitude"] = mean_correction_magnitude(spec);
  const std::size_t largest = opts.n.empty() ? 0 : *std::max_element(opts.n.begin(), opts.n.end());
  std::optional<MomentTrajectory> exact;
  if (largest <= kExactMomentLimit) exact = moment_recurrence(spec, largest);

  const double a = static_cast<double>(spec.alpha());
  const double b = static_cast<double>(spec.beta());
  const double s = static_cast<double>(spec.sigma());
  r.columns = {"n", "mean", "variance", "mean_value", "variance_value", "predicted_mean",
               "predicted_variance", "mean_correction_scaled", "variance_ratio"};
  ojson rows = ojson::array();
  for (std::size_t n : opts.n) {
    const double nn = static_cast<double>(n);
    double mean = 0.0;
    double variance = 0.0;
    ojson row;
    row["n"] = n;
    if (exact) {
      row["mean"] = to_string(exact->mean[n]);
      row["variance"] = to_string(exact->variance[n]);
      mean = exact->mean[n].get_d();
      variance = exact->variance[n].get_d();
    } else {
      const ApproxMoments approx = moment_recurrence_approx(spec, n);
      row["mean"] = nullptr;
      row["variance"] = nullptr;
      mean = approx.mean;
      variance = approx.variance;
    }
    const MeanVariancePrediction pred = mean_variance_expansion(spec, nn, opts.sign);
    std::optional<double> scaled;
    std::optional<double> ratio;
    if (n > 0) {
      scaled = (mean - params.mu_value() * nn - a / (a + b)) / std::pow(nn, a / s);
      ratio = variance / (params.nu2_value() * nn);
    }
    row["mean_value"] = mean;
    row["variance_value"] = variance;
    row["predicted_mean"] = pred.mean;
    row["predicted_variance"] = pred.variance;
    row["mean_correction_scaled"] = nullable(scaled);
    row["variance_ratio"] = nullable(ratio);
    r.rows.push_back({cell(n), row["mean"].is_null() ? "" : row["mean"].get<std::string>(),
                      row["variance"].is_null() ? "" : row["variance"].get<std::string>(), cell(mean),
                      cell(variance), cell(pred.mean), cell(pred.variance), nullable_cell(scaled),
                      nullable_cell(ratio)});
    rows.push_back(std::move(row));
  }
  r.json["rows"] = std::move(rows);
  return r;
}

Report run_gf_check(const UrnSpec& spec, const GfCheckOptions& opts) {
  const HistoryTable table = build_history_table(spec, opts.order);
  Report r = start("gf-check", spec);
  r.json["order"] = opts.order;
  r.json["arithmetic"] = opts.high_precision ? "high-precision" : "rational";
  r.columns = {"x", "coefficient", "residual"};
  bool all_zero = true;
  ojson checks = ojson::array();
  for (const std::string& text : opts.x) {
    ojson check;
    check["x"] = text;
    ojson residual_json = ojson::array();
    bool zero = true;
    if (opts.high_precision) {
      const HighReal x = to_high_real(parse_rational(text));
      const auto residual = algebraic_residual(series_from_table(table, x, opts.order), make_algebraic_equation(spec, x));
      HighReal worst = 0;
      for (std::size_t i = 0; i < residual.size(); ++i) {
        const HighReal mag = boost::multiprecision::abs(residual[i]);
        worst = std::max(worst, mag);
        const std::string shown = residual[i].str(6, std::ios_base::scientific);
        residual_json.push_back(shown);
        r.rows.push_back({text, cell(i), shown});
      }
      zero = worst < kHighPrecisionResidualTol;
      check["max_abs_residual"] = worst.str(6, std::ios_base::scientific);
      check["tolerance"] = kHighPrecisionResidualTol.str(6, std::ios_base::scientific);
    } else {
      const Rational x = parse_rational(text);
      const auto residual = algebraic_residual(series_from_table(table, x, opts.order), make_algebraic_equation(spec, x));
      for (std::size_t i = 0; i < residual.size(); ++i) {
        zero = zero && residual[i] == 0;
        residual_json.push_back(to_string(residual[i]));
        r.rows.push_back({text, cell(i), to_string(residual[i])});
      }
    }
    check["zero"] = zero;
    check["residual"] = std::move(residual_json);
    all_zero = all_zero && zero;
    checks.push_back(std::move(check));
  }
  r.json["all_zero"] = all_zero;
  r.json["checks"] = std::move(checks);
  return r;
}

Report run_saddle(const UrnSpec& spec, const SaddleOptions& opts, const RowCache& cache) {
  const Complex x{opts.x_re, opts.x_im};
  const Integrand integrand(spec, x);
  Report r = start("saddle", spec);
  r.json["x"] = complex_json(x);

  const SaddleSet saddles = find_saddle_points(integrand);
  auto point_json = [](const SaddlePoint& p) {
    return ojson{{"re", p.w.real()}, {"im", p.w.imag()}, {"multiplicity", p.multiplicity},
                 {"derivative_residual", p.derivative_residual}};
  };
  ojson secondary = ojson::array();
  for (const auto& p : saddles.secondary) secondary.push_back(point_json(p));
  r.json["saddles"] = ojson{{"main", point_json(saddles.main)},
                            {"secondary", std::move(secondary)},
                            {"total_multiplicity", saddles.total_multiplicity()},
                            {"spread", saddles.spread()}};
  ojson poles = ojson::array();
  for (const Complex& p : integrand.poles()) poles.push_back(complex_json(p));
  r.json["poles"] = std::move(poles);

  const bool real_positive_x = opts.x_im == 0.0 && opts.x_re > 0.0;
  std::vector<std::size_t> exact_ns;
  if (real_positive_x) {
    for (std::size_t n : opts.n) {
      if (n <= opts.exact_limit) exact_ns.push_back(n);
    }
  }
  const auto rows = cache.rows(spec, exact_ns);

  std::ofstream dump;
  if (opts.dump_contour) {
    dump.open(*opts.dump_contour);
    if (!dump) throw UrnError(ErrorCode::InvalidArgument, "cannot write " + *opts.dump_contour);
    dump << "n,segment,parameter,w_re,w_im,h_re,h_im,abs_h_pow_n\n";
  }

  r.columns = {"n", "coefficient_re", "coefficient_im", "log_abs_coefficient", "exact_log", "relative_error",
               "upper_ray", "lower_ray", "arc", "enclosed", "tail_fraction", "condition", "panels"};
  ojson contours = ojson::array();
  for (std::size_t n : opts.n) {
    ContourSpec contour = standard_contour(spec, n);
    if (opts.t_max) contour.t_max = *opts.t_max;
    const ContourResult result = contour_coefficient(integrand, contour);
    const double t_cut = std::pow(static_cast<double>(n), 1.0 / static_cast<double>(spec.sigma() + 1));
    const double tail = result.relative(ray_tail(integrand, contour, result, t_cut));
    const Complex total = result.scaled_total();
    const double log_abs = result.log_abs_coefficient();

    std::optional<double> exact_log;
    std::optional<double> rel_error;
    if (auto it = rows.find(n); it != rows.end()) {
      exact_log = log_series_coefficient(spec, it->second, n, opts.x_re);
      const Complex ratio = std::polar(std::exp(log_abs - *exact_log), std::arg(total));
      rel_error = std::abs(ratio - 1.0);
    }
    const Complex coefficient = result.coefficient();

    ojson enclosed = ojson::array();
    for (const auto& p : result.enclosed) enclosed.push_back(complex_json(p.w));
    ojson entry;
    entry["n"] = n;
    entry["t_max"] = contour.t_max;
    entry["arc_radius"] = contour.arc_radius();
    entry["coefficient"] = complex_json(coefficient);
    entry["log_abs_coefficient"] = log_abs;
    entry["exact_log"] = nullable(exact_log);
    entry["relative_error"] = nullable(rel_error);
    entry["segments"] = ojson{{"upper_ray", result.relative(result.upper_ray)},
                              {"lower_ray", result.relative(result.lower_ray)},
                              {"arc", result.relative(result.arc)},
                              {"enclosed", result.relative(result.enclosed_correction())}};
    entry["enclosed_poles"] = std::move(enclosed);
    entry["tail_cut"] = t_cut;
    entry["tail_fraction"] = tail;
    entry["condition"] = result.condition();
    entry["panels"] = result.panels;
    contours.push_back(std::move(entry));
    r.rows.push_back({cell(n), cell(coefficient.real()), cell(coefficient.imag()), cell(log_abs),
                      nullable_cell(exact_log), nullable_cell(rel_error), cell(result.relative(result.upper_ray)),
                      cell(result.relative(result.lower_ray)), cell(result.relative(result.arc)),
                      cell(result.relative(result.enclosed_correction())), cell(tail), cell(result.condition()),
                      cell(result.panels)});

    if (dump.is_open()) {
      for (const auto& s : sample_contour(integrand, contour, opts.samples)) {
        dump << n << ',' << s.segment << ',' << cell(s.parameter) << ',' << cell(s.w.real()) << ','
             << cell(s.w.imag()) << ',' << cell(s.h.real()) << ',' << cell(s.h.imag()) << ','
             << cell(s.abs_h_pow_n) << '\n';
      }
    }
  }
  r.json["contours"] = std::move(contours);
  return r;
}

Report run_limits(const UrnSpec& spec, const LimitsOptions& opts, const RowCache& cache) {
  const LimitParams params = limit_params(spec);
  for (std::size_t n : opts.n) {
    if (n == 0) throw UrnError(ErrorCode::InvalidArgument, "limit metrics need n >= 1");
  }
  std::map<std::size_t, LatticeMasses> masses;
  if (opts.backend == "exact") {
    for (auto& [n, row] : cache.rows(spec, opts.n)) masses.emplace(n, ExactDistribution(spec, n, row).to_lattice());
  } else {
    for (auto& [n, dist] : log_distributions(spec, opts.n)) masses.emplace(n, dist.to_lattice());
  }

  Report r = start("limits", spec);
  r.json["params"] = params_json(params);
  r.json["backend"] = opts.backend;
  r.json["u"] = opts.u;
  r.columns = {"n", "metric", "value", "value_sqrt_n"};
  ojson rows = ojson::array();
  for (std::size_t n : opts.n) {
    const LatticeMasses& m = masses.at(n);
    const double nn = static_cast<double>(n);
    const double root = std::sqrt(nn);
    const double cdf = gaussian_cdf_error(m, params);
    const double local = local_limit_error(m, params);
    const Complex exact_pgf = probability_generating_function(m, std::polar(1.0, opts.u / root));
    const Complex predicted = quasi_power_pn_at(params, opts.u, nn);
    const double qp = std::abs(exact_pgf - predicted) / std::abs(predicted);
    rows.push_back(ojson{{"n", n},
                         {"gaussian_cdf_error", cdf},
                         {"gaussian_cdf_error_sqrt_n", cdf * root},
                         {"local_limit_error", local},
                         {"local_limit_error_sqrt_n", local * root},
                         {"quasi_power_error", qp}});
    r.rows.push_back({cell(n), "gaussian_cdf_error", cell(cdf), cell(cdf * root)});
    r.rows.push_back({cell(n), "local_limit_error", cell(local), cell(local * root)});
    r.rows.push_back({cell(n), "quasi_power_error", cell(qp), cell(qp * root)});
  }
  r.json["rows"] = std::move(rows);
  return r;
}

Report run_deviations(const UrnSpec& spec, const DeviationsOptions& opts) {
  const LimitParams params = limit_params(spec);
  const RateFunction rf(params, opts.xi);
  std::vector<double> ts = opts.t;
  if (ts.empty()) {
    const std::size_t points = std::max<std::size_t>(opts.points, 2);
    for (std::size_t i = 0; i < points; ++i) {
      ts.push_back(rf.t0() + (rf.t1() - rf.t0()) * static_cast<double>(i) / static_cast<double>(points - 1));
    }
  }
  const auto dists = log_distributions(spec, opts.n);

  Report r = start("deviations", spec);
  r.json["params"] = params_json(params);
  r.json["xi"] = rf.xi();
  r.json["x0"] = rf.x0();
  r.json["x1"] = rf.x1();
  r.json["t0"] = rf.t0();
  r.json["t1"] = rf.t1();
  if (ts.size() == 1) r.json["W"] = rf.eval(ts[0]);
  r.columns = {"t", "W", "closed_form", "argmin", "interior", "n", "empirical_exponent"};
  ojson rows = ojson::array();
  for (double t : ts) {
    const double w = rf.eval(t);
    const double closed = rf.closed_form(t);
    const double argmin = rf.argmin(t);
    ojson empirical = ojson::array();
    for (const auto& [n, dist] : dists) {
      std::optional<double> exponent;
      try {
        exponent = empirical_tail_exponent(dist, params, t);
      } catch (const UrnError& e) {
        if (e.code() != ErrorCode::EmptyTail) throw;
      }
      empirical.push_back(ojson{{"n", n}, {"exponent", nullable(exponent)}});
      r.rows.push_back({cell(t), cell(w), cell(closed), cell(argmin), rf.interior(t) ? "true" : "false", cell(n),
                        nullable_cell(exponent)});
    }
    if (dists.empty()) {
      r.rows.push_back({cell(t), cell(w), cell(closed), cell(argmin), rf.interior(t) ? "true" : "false", "", ""});
    }
    rows.push_back(ojson{{"t", t},
                         {"W", w},
                         {"closed_form", closed},
                         {"argmin", argmin},
                         {"interior", rf.interior(t)},
                         {"empirical", std::move(empirical)}});
  }
  r.json["rows"] = std::move(rows);
  return r;
}

Report run_simulate(const UrnSpec& spec, const SimulateOptions& opts) {
  const SimulationRun run = simulate(spec, opts.n, opts.trials, opts.seed, opts.threads);
  const ApproxMoments exact = moment_recurrence_approx(spec, opts.n);
  Report r = start("simulate", spec);
  r.json["rng"] = SplitMix64::kName;
  r.json["seed"] = opts.seed;
  r.json["n"] = opts.n;
  r.json["trials"] = opts.trials;
  r.json["mean"] = run.mean;
  r.json["variance"] = run.variance;
  r.json["standard_error"] = run.standard_error();
  r.json["exact_mean"] = exact.mean;
  r.json["exact_variance"] = exact.variance;
  r.json["audited_trials"] = run.audited_trials;
  ojson histogram = ojson::array();
  r.columns = {"black_count", "frequency"};
  for (std::size_t k = 0; k < run.frequency.size(); ++k) {
    if (run.frequency[k] == 0) continue;
    histogram.push_back(ojson{{"black", run.black(k)}, {"frequency", run.frequency[k]}});
    r.rows.push_back({cell(run.black(k)), cell(run.frequency[k])});
  }
  r.json["histogram"] = std::move(histogram);
  return r;
}

Report run_surface(const UrnSpec& spec, const SurfaceOptions& opts) {
  const Complex x{opts.x_re, opts.x_im};
  const Integrand integrand(spec, x);
  const auto samples = sample_surface(integrand, Complex{opts.re_min, opts.im_min}, Complex{opts.re_max, opts.im_max},
                                      opts.nx, opts.ny);
  Report r = start("surface", spec);
  r.json["x"] = complex_json(x);
  r.json["grid"] = ojson{{"re_min", opts.re_min}, {"re_max", opts.re_max}, {"im_min", opts.im_min},
                         {"im_max", opts.im_max}, {"nx", opts.nx},         {"ny", opts.ny}};
  ojson poles = ojson::array();
  for (const Complex& p : integrand.poles()) poles.push_back(complex_json(p));
  r.json["poles"] = std::move(poles);
  r.columns = {"w_re", "w_im", "h_re", "h_im", "abs_h"};
  ojson points = ojson::array();
  for (const auto& s : samples) {
    const double mag = std::abs(s.h);
    points.push_back(ojson::array({s.w.real(), s.w.imag(), s.h.real(), s.h.imag(), mag}));
    r.rows.push_back({cell(s.w.real()), cell(s.w.imag()), cell(s.h.real()), cell(s.h.imag()), cell(mag)});
  }
  r.json["points"] = std::move(points);
  return r;
}

}  // namespace urnlab::cli
