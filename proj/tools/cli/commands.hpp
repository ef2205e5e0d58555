#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cli/cache.hpp"
#include "cli/report.hpp"
#include "urnlab/urn.hpp"

namespace urnlab::cli {

struct UrnOptions {
  std::int64_t alpha = 1;
  std::int64_t beta = 1;
  std::int64_t a0 = 0;
  std::int64_t b0 = 1;

  UrnSpec validate() const { return validate_urn(alpha, beta, a0, b0); }
};

struct DistOptions {
  std::size_t n = 0;
};

struct MomentsOptions {
  std::vector<std::size_t> n;
  int sign = -1;
};

struct GfCheckOptions {
  std::vector<std::string> x{"1/2", "1", "2", "3"};
  std::size_t order = 20;
  bool high_precision = false;
};

struct SaddleOptions {
  double x_re = 1.0;
  double x_im = 0.0;
  std::vector<std::size_t> n{10};
  std::optional<double> t_max;
  std::size_t exact_limit = 3000;
  std::optional<std::string> dump_contour;
  std::size_t samples = 200;
};

struct LimitsOptions {
  std::vector<std::size_t> n{25, 100, 400};
  double u = 1.0;
  std::string backend = "exact";
};

struct DeviationsOptions {
  double xi = 0.5;
  std::vector<double> t;
  std::size_t points = 11;
  std::vector<std::size_t> n;
};

struct SimulateOptions {
  std::size_t n = 0;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SurfaceOptions {
  double x_re = 1.0;
  double x_im = 0.0;
  double re_min = -1.5;
  double re_max = 2.5;
  double im_min = -2.0;
  double im_max = 2.0;
  std::size_t nx = 81;
  std::size_t ny = 81;
};

Report run_dist(const UrnSpec& spec, const DistOptions& opts, const RowCache& cache);
Report run_moments(const UrnSpec& spec, const MomentsOptions& opts);
Report run_gf_check(const UrnSpec& spec, const GfCheckOptions& opts);
Report run_saddle(const UrnSpec& spec, const SaddleOptions& opts, const RowCache& cache);
Report run_limits(const UrnSpec& spec, const LimitsOptions& opts, const RowCache& cache);
Report run_deviations(const UrnSpec& spec, const DeviationsOptions& opts);
Report run_simulate(const UrnSpec& spec, const SimulateOptions& opts);
Report run_surface(const UrnSpec& spec, const SurfaceOptions& opts);

}  // namespace urnlab::cli
