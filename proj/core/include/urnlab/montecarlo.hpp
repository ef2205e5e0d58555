#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "urnlab/urn.hpp"

namespace urnlab {

// SplitMix64 (Steele, Lea, Flood 2014). Stream for trial i is seeded with
// mix(seed, i), so a trial's draws do not depend on scheduling.
class SplitMix64 {
 public:
  static constexpr const char* kName = "splitmix64/v1";

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept;

 private:
  std::uint64_t state_;
};

struct SimulationRun {
  UrnSpec spec;
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  // frequency[k]: trials that ended with k black draws (X_n = black(n, k)).
  std::vector<std::uint64_t> frequency;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
  std::size_t audited_trials = 0;

  std::int64_t black(std::size_t k) const {
    return spec.black(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k));
  }
  double standard_error() const;

  friend bool operator==(const SimulationRun&, const SimulationRun&) = default;
};

// threads == 0 picks std::thread::hardware_concurrency(). Results are
// identical for every thread count. Throws UrnError(CapacityExceeded) when the
// final urn size does not fit in 63 bits, UrnError(InvalidArgument) for
// trials == 0.
SimulationRun simulate(const UrnSpec& spec, std::size_t n, std::size_t trials, std::uint64_t seed,
                       unsigned threads = 1);

}  // namespace urnlab
