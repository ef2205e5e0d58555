#include <cstdlib>
#include <map>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "cli/cli.hpp"
#include "cli/commands.hpp"
#include "urnlab/error.hpp"

namespace urnlab::cli {
namespace {

struct Common {
  UrnOptions urn;
  Format format = Format::Json;
  std::optional<std::string> cache_dir;
};

const std::map<std::string, Format> kFormats{{"json", Format::Json}, {"csv", Format::Csv}};

void add_common(CLI::App& sub, Common& common) {
  sub.add_option("--alpha", common.urn.alpha, "black-draw increment alpha (>= 1)")->required();
  sub.add_option("--beta", common.urn.beta, "beta (>= 1)")->required();
  sub.add_option("--a0", common.urn.a0, "initial black balls")->capture_default_str();
  sub.add_option("--b0", common.urn.b0, "initial white balls")->capture_default_str();
  sub.add_option("--format", common.format, "json or csv")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  sub.add_option("--cache-dir", common.cache_dir, "directory for cached history rows");
}

unsigned threads_from_env() {
  const char* env = std::getenv("URNLAB_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  try {
    std::size_t used = 0;
    const unsigned long value = std::stoul(env, &used);
    if (used == std::string(env).size()) return static_cast<unsigned>(value);
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("URNLAB_THREADS", std::string("not an unsigned integer: ") + env);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic distributions of the preferential growth urn A(alpha, beta)", "urnlab"};
  app.require_subcommand(1);

  Common common;
  DistOptions dist;
  MomentsOptions moments;
  GfCheckOptions gf;
  SaddleOptions saddle;
  LimitsOptions limits;
  DeviationsOptions deviations;
  SimulateOptions simulate;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  SurfaceOptions surface;

  auto* dist_cmd = app.add_subcommand("dist", "exact distribution of the black count after n draws");
  add_common(*dist_cmd, common);
  dist_cmd->add_option("--n", dist.n, "number of draws")->required();

  auto* moments_cmd = app.add_subcommand("moments", "exact mean and variance against the expansion");
  add_common(*moments_cmd, common);
  moments_cmd->add_option("--n", moments.n, "draw counts, comma separated")->required()->delimiter(',');
  moments_cmd->add_option("--sign", moments.sign, "sign of the n^(alpha/sigma) mean correction")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();

  auto* gf_cmd = app.add_subcommand("gf-check", "residual of the algebraic equation on the truncated series");
  add_common(*gf_cmd, common);
  gf_cmd->add_option("--x", gf.x, "evaluation points (p/q or decimal), comma separated")
      ->delimiter(',')
      ->capture_default_str();
  gf_cmd->add_option("--order", gf.order, "truncation order N")->capture_default_str();
  gf_cmd->add_flag("--high-precision", gf.high_precision, "100-digit floating point instead of rationals");

  auto* saddle_cmd = app.add_subcommand("saddle", "saddle points and the contour-integral coefficient");
  add_common(*saddle_cmd, common);
  saddle_cmd->add_option("--x", saddle.x_re, "real part of x")->capture_default_str();
  saddle_cmd->add_option("--x-imag", saddle.x_im, "imaginary part of x")->capture_default_str();
  saddle_cmd->add_option("--n", saddle.n, "coefficient indices, comma separated")->delimiter(',');
  saddle_cmd->add_option("--t-max", saddle.t_max, "ray length in t (default max(n^2, 2^sigma n))");
  saddle_cmd->add_option("--exact-limit", saddle.exact_limit, "largest n compared against the exact coefficient")
      ->capture_default_str();
  saddle_cmd->add_option("--dump-contour", saddle.dump_contour, "write sampled contour points as CSV");
  saddle_cmd->add_option("--samples", saddle.samples, "contour samples per segment")->capture_default_str();

  auto* limits_cmd = app.add_subcommand("limits", "Gaussian, local and quasi-power error ladders");
  add_common(*limits_cmd, common);
  limits_cmd->add_option("--n", limits.n, "draw counts, comma separated")->delimiter(',')->capture_default_str();
  limits_cmd->add_option("--u", limits.u, "PGF argument e^{iu/sqrt(n)}")->capture_default_str();
  limits_cmd->add_option("--backend", limits.backend, "exact or log")
      ->check(CLI::IsMember({"exact", "log"}))
      ->capture_default_str();

  auto* dev_cmd = app.add_subcommand("deviations", "rate function table and empirical tail exponents");
  add_common(*dev_cmd, common);
  dev_cmd->add_option("--xi", deviations.xi, "window parameter in (0, 1)")->capture_default_str();
  dev_cmd->add_option("--t", deviations.t, "t values, comma separated (default: grid on [t0, t1])")->delimiter(',');
  dev_cmd->add_option("--points", deviations.points, "grid size when --t is absent")->capture_default_str();
  dev_cmd->add_option("--n", deviations.n, "draw counts for empirical exponents")->delimiter(',');

  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo runs of the urn");
  add_common(*sim_cmd, common);
  sim_cmd->add_option("--n", simulate.n, "draws per trial")->required();
  sim_cmd->add_option("--trials", simulate.trials, "number of trials")->capture_default_str();
  sim_cmd->add_option("--seed", seed, "64-bit seed")->required();
  sim_cmd->add_option("--threads", threads, "worker threads (0 = all cores; env URNLAB_THREADS)");

  auto* surface_cmd = app.add_subcommand("surface", "grid of h_x(w) values");
  add_common(*surface_cmd, common);
  surface_cmd->add_option("--x", surface.x_re, "real part of x")->capture_default_str();
  surface_cmd->add_option("--x-imag", surface.x_im, "imaginary part of x")->capture_default_str();
  surface_cmd->add_option("--re-min", surface.re_min)->capture_default_str();
  surface_cmd->add_option("--re-max", surface.re_max)->capture_default_str();
  surface_cmd->add_option("--im-min", surface.im_min)->capture_default_str();
  surface_cmd->add_option("--im-max", surface.im_max)->capture_default_str();
  surface_cmd->add_option("--nx", surface.nx)->capture_default_str();
  surface_cmd->add_option("--ny", surface.ny)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (sim_cmd->parsed()) simulate.threads = threads ? *threads : threads_from_env();
  } catch (const CLI::ParseError& e) {
    std::ostringstream usage;
    std::ostringstream failure;
    const int code = app.exit(e, usage, failure);
    out << usage.str();
    err << failure.str();
    return code == 0 ? 0 : 2;
  }

  try {
    const UrnSpec spec = common.urn.validate();
    const RowCache cache(common.cache_dir ? std::optional<std::filesystem::path>(*common.cache_dir) : std::nullopt);
    Report report;
    if (dist_cmd->parsed()) {
      report = run_dist(spec, dist, cache);
    } else if (moments_cmd->parsed()) {
      report = run_moments(spec, moments);
    } else if (gf_cmd->parsed()) {
      report = run_gf_check(spec, gf);
    } else if (saddle_cmd->parsed()) {
      report = run_saddle(spec, saddle, cache);
    } else if (limits_cmd->parsed()) {
      report = run_limits(spec, limits, cache);
    } else if (dev_cmd->parsed()) {
      report = run_deviations(spec, deviations);
    } else if (sim_cmd->parsed()) {
      simulate.seed = *seed;
      report = run_simulate(spec, simulate);
    } else {
      report = run_surface(spec, surface);
    }
    write_report(report, common.format, out);
    return 0;
  } catch (const UrnError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace urnlab::cli
