#include <doctest.h>

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "test_support.hpp"

using namespace urnlab;
using urnlab::test::a11;
using urnlab::test::a32;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const UrnError& e) {
    return e.code();
  }
  FAIL("expected UrnError");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("splitmix64 reference outputs") {
  // First outputs for state 0 from the reference implementation.
  SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafULL);
  CHECK(g.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(g.next() == 0x06c45d188009454fULL);
  SplitMix64 u(42);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(SplitMix64::trial_seed(1, 0) != SplitMix64::trial_seed(1, 1));
  CHECK(SplitMix64::trial_seed(1, 0) != SplitMix64::trial_seed(2, 0));
}

TEST_CASE("first draw is forced") {
  const SimulationRun run = simulate(a11(), 1, 1000, 7);
  CHECK(run.frequency.size() == 2);
  CHECK(run.frequency[0] == 1000);
  CHECK(run.black(0) == 1);
  CHECK(run.mean == 1.0);
  CHECK(run.variance == 0.0);
}

TEST_CASE("zero steps keep the initial urn") {
  const SimulationRun run = simulate(validate_urn(2, 1, 3, 4), 0, 50, 1);
  CHECK(run.frequency == std::vector<std::uint64_t>{50});
  CHECK(run.mean == 3.0);
}

TEST_CASE("sample mean at n = 3") {
  const SimulationRun run = simulate(a11(), 3, 100000, 2024);
  CHECK(std::abs(run.mean - 25.0 / 7.0) < 3.0 * run.standard_error());
}

TEST_CASE("runs are reproducible and thread-count independent") {
  const SimulationRun a = simulate(a32(), 50, 20000, 99);
  const SimulationRun b = simulate(a32(), 50, 20000, 99);
  CHECK(a == b);
  for (unsigned threads : {2u, 3u, 8u}) CHECK(simulate(a32(), 50, 20000, 99, threads) == a);
  CHECK(simulate(a32(), 50, 20000, 100) != a);
}

TEST_CASE("audit covers one trial in a hundred") {
  CHECK(simulate(a11(), 20, 1000, 3).audited_trials == 10);
  CHECK(simulate(a11(), 20, 1001, 3).audited_trials == 11);
  CHECK(simulate(a11(), 20, 1, 3).audited_trials == 1);
}

TEST_CASE("simulation errors") {
  CHECK(code_of([] { simulate(a11(), 5, 0, 1); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { simulate(a11(), std::size_t{1} << 62, 1, 1); }) == ErrorCode::CapacityExceeded);
}

TEST_CASE("chi-square against the exact law at n = 10") {
  for (auto spec : {a11(), a32()}) {
    const std::size_t n = 10;
    const std::size_t trials = 1000000;
    const HistoryTable table = build_history_table(spec, n);
    const ExactDistribution dist = exact_distribution(table, n);
    const SimulationRun run = simulate(spec, n, trials, 0x5eed);
    double stat = 0.0;
    int cells = 0;
    for (std::size_t k = 0; k <= n; ++k) {
      const double expected = dist.mass(k).get_d() * static_cast<double>(trials);
      if (expected == 0.0) {
        CHECK(run.frequency[k] == 0);
        continue;
      }
      const double diff = static_cast<double>(run.frequency[k]) - expected;
      stat += diff * diff / expected;
      ++cells;
    }
    const boost::math::chi_squared chi(cells - 1);
    CHECK(stat < boost::math::quantile(chi, 0.999));
  }
}

TEST_CASE("large n agrees with the exact moment recurrence") {
  const std::size_t n = 10000;
  const std::size_t trials = 100000;
  const SimulationRun run = simulate(a11(), n, trials, 20240601);
  const ApproxMoments exact = moment_recurrence_approx(a11(), n);
  CHECK(std::abs(run.mean - exact.mean) < 4.0 * run.standard_error());
  // Var(S^2) ~ (mu_4 - sigma^4) / trials; near-Gaussian X_n gives mu_4 ~ 3 sigma^4.
  const double variance_se = exact.variance * std::sqrt(2.0 / static_cast<double>(trials));
  CHECK(std::abs(run.variance - exact.variance) < 4.0 * variance_se);

  // mu n alone misses by the n^{1/3} term, many standard errors away.
  const double mu_n = 1.5 * static_cast<double>(n);
  CHECK(std::abs(run.mean - mu_n) > 4.0 * run.standard_error());
}
