#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "urnlab/history.hpp"
#include "urnlab/numeric.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

// Point masses on an arithmetic lattice first + step*k, k = 0..size-1.
// Shared currency of the limit-law metrics.
struct LatticeMasses {
  std::size_t n = 0;
  std::int64_t first = 0;
  std::int64_t step = 1;
  std::vector<double> mass;

  std::int64_t value(std::size_t k) const noexcept {
    return first + step * static_cast<std::int64_t>(k);
  }
};

// Law of X_n (black balls after n steps), held as exact counts over the total
// number of histories.
class ExactDistribution {
 public:
  ExactDistribution(const UrnSpec& spec, std::size_t n, HistoryRow counts);

  const UrnSpec& spec() const noexcept { return spec_; }
  std::size_t n() const noexcept { return n_; }
  const HistoryRow& counts() const noexcept { return counts_; }
  const BigInt& total() const noexcept { return total_; }

  // Black count for the k-th support point (k black draws).
  std::int64_t black(std::size_t k) const noexcept {
    return spec_.black(static_cast<std::int64_t>(n_), static_cast<std::int64_t>(k));
  }

  // Canonical (reduced) mass of the k-th point.
  Rational mass(std::size_t k) const;
  // Nonzero masses keyed by black count.
  std::map<std::int64_t, Rational> masses() const;

  // Double masses. Entries below the double range come out as 0.
  LatticeMasses to_lattice() const;
  // log P(X_n = black(k)); -inf where the count is zero.
  std::vector<double> log_masses() const;

 private:
  UrnSpec spec_;
  std::size_t n_;
  HistoryRow counts_;
  BigInt total_;
};

// Throws UrnError(RowMissing) if n > table.n_max().
ExactDistribution exact_distribution(const HistoryTable& table, std::size_t n);

struct Moments {
  Rational mean;
  Rational variance;
};

Moments exact_moments(const ExactDistribution& dist);
Moments exact_moments(const HistoryTable& table, std::size_t n);

// First two moments from the one-step conditional recurrences
//   m_{n+1}  = m_n (1 + alpha/s_n) + alpha,
//   q_{n+1}  = q_n + 2 alpha m_n + alpha^2 + (2 alpha q_n + 3 alpha^2 m_n)/s_n,
// with s_n = a0 + b0 + sigma n. Independent of the counting DP.
struct MomentTrajectory {
  std::vector<Rational> mean;
  std::vector<Rational> variance;
};
MomentTrajectory moment_recurrence(const UrnSpec& spec, std::size_t n_max);
// Same recurrence in long double for n far beyond exact reach.
struct ApproxMoments {
  double mean = 0.0;
  double variance = 0.0;
};
ApproxMoments moment_recurrence_approx(const UrnSpec& spec, std::size_t n);

// Log-space floating-point backend: propagates log-probabilities with
// log-sum-exp so that tail masses far below the double range stay finite.
struct LogDistribution {
  std::size_t n = 0;
  std::int64_t first = 0;
  std::int64_t step = 1;
  std::vector<double> log_mass;

  LatticeMasses to_lattice() const;
};

LogDistribution log_distribution(const UrnSpec& spec, std::size_t n);
// One pass of the recurrence, keeping the rows listed in `wanted`.
std::map<std::size_t, LogDistribution> log_distributions(const UrnSpec& spec,
                                                         std::span<const std::size_t> wanted);

}  // namespace urnlab
