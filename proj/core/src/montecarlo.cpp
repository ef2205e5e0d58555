#include "urnlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "urnlab/error.hpp"

namespace urnlab {
namespace {

struct ChunkResult {
  std::vector<std::uint64_t> frequency;
  std::size_t audited = 0;
};

void run_trials(const UrnSpec& spec, std::size_t n, std::uint64_t seed, std::size_t begin,
                std::size_t end, ChunkResult& out) {
  const std::int64_t grow_black_on_black = 2 * spec.alpha();
  const std::int64_t grow_white_on_black = spec.beta();
  const std::int64_t grow_black_on_white = spec.alpha();
  const std::int64_t grow_white_on_white = spec.alpha() + spec.beta();
  for (std::size_t trial = begin; trial < end; ++trial) {
    SplitMix64 rng(SplitMix64::trial_seed(seed, trial));
    const bool audit = trial % 100 == 0;
    std::int64_t black = spec.a0();
    std::int64_t white = spec.b0();
    std::size_t black_draws = 0;
    for (std::size_t step = 0; step < n; ++step) {
      const double total = static_cast<double>(black + white);
      if (rng.uniform() * total < static_cast<double>(black)) {
        black += grow_black_on_black;
        white += grow_white_on_black;
        ++black_draws;
      } else {
        black += grow_black_on_white;
        white += grow_white_on_white;
      }
      if (audit && black + white != spec.total_balls(static_cast<std::int64_t>(step + 1))) {
        throw std::logic_error("balance invariant violated in trial " + std::to_string(trial));
      }
    }
    if (audit) ++out.audited;
    ++out.frequency[black_draws];
  }
}

}  // namespace

std::uint64_t SplitMix64::trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  SplitMix64 mixer(seed ^ (trial * 0xd1b54a32d192ed03ULL));
  mixer.next();
  return mixer.next();
}

double SimulationRun::standard_error() const {
  return trials > 0 ? std::sqrt(variance / static_cast<double>(trials)) : 0.0;
}

SimulationRun simulate(const UrnSpec& spec, std::size_t n, std::size_t trials, std::uint64_t seed,
                       unsigned threads) {
  if (trials == 0) throw UrnError(ErrorCode::InvalidArgument, "trials must be >= 1");
  const double final_size = static_cast<double>(spec.a0() + spec.b0()) +
                            static_cast<double>(spec.sigma()) * static_cast<double>(n);
  if (final_size > 0x1.0p62) {
    throw UrnError(ErrorCode::CapacityExceeded, "urn size overflows 64-bit counters");
  }
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));

  std::vector<ChunkResult> chunks(threads);
  for (auto& c : chunks) c.frequency.assign(n + 1, 0);
  const std::size_t per = trials / threads;
  const std::size_t extra = trials % threads;
  std::vector<std::size_t> bounds{0};
  for (unsigned i = 0; i < threads; ++i) bounds.push_back(bounds.back() + per + (i < extra ? 1 : 0));

  if (threads == 1) {
    run_trials(spec, n, seed, 0, trials, chunks[0]);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> workers;
    for (unsigned i = 0; i < threads; ++i) {
      workers.emplace_back([&, i] {
        try {
          run_trials(spec, n, seed, bounds[i], bounds[i + 1], chunks[i]);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
    for (auto& w : workers) w.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  SimulationRun run{spec, n, trials, seed, std::vector<std::uint64_t>(n + 1, 0), 0.0, 0.0, 0};
  for (const auto& c : chunks) {
    for (std::size_t k = 0; k <= n; ++k) run.frequency[k] += c.frequency[k];
    run.audited_trials += c.audited;
  }
  long double sum = 0.0L;
  for (std::size_t k = 0; k <= n; ++k) {
    sum += static_cast<long double>(run.frequency[k]) * static_cast<long double>(run.black(k));
  }
  const long double mean = sum / static_cast<long double>(trials);
  long double squares = 0.0L;
  for (std::size_t k = 0; k <= n; ++k) {
    const long double d = static_cast<long double>(run.black(k)) - mean;
    squares += static_cast<long double>(run.frequency[k]) * d * d;
  }
  run.mean = static_cast<double>(mean);
  run.variance = trials > 1 ? static_cast<double>(squares / static_cast<long double>(trials - 1)) : 0.0;
  return run;
}

}  // namespace urnlab
