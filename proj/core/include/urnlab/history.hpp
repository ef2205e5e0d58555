#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "urnlab/numeric.hpp"
#include "urnlab/urn.hpp"

namespace urnlab {

using HistoryRow = std::vector<BigInt>;

// Default ceiling on the estimated in-memory footprint of a full table.
inline constexpr std::size_t kDefaultTableBytes = std::size_t{1} << 31;

// Exact history counts counts[n][k]: number of length-n histories with k black
// draws. Immutable once built; safe to share between readers.
class HistoryTable {
 public:
  const UrnSpec& spec() const noexcept { return spec_; }
  std::size_t n_max() const noexcept { return rows_.size() - 1; }

  // Throws UrnError(RowMissing) for n > n_max().
  std::span<const BigInt> row(std::size_t n) const;

  friend HistoryTable build_history_table(const UrnSpec&, std::size_t, std::size_t);
  friend HistoryTable history_table_from_json(const nlohmann::json&);

 private:
  HistoryTable(UrnSpec spec, std::vector<HistoryRow> rows)
      : spec_(spec), rows_(std::move(rows)) {}

  UrnSpec spec_;
  std::vector<HistoryRow> rows_;
};

// Dynamic programme over (n, k). Throws UrnError(CapacityExceeded) when the
// estimated size of all rows exceeds max_bytes.
HistoryTable build_history_table(const UrnSpec& spec, std::size_t n_max,
                                 std::size_t max_bytes = kDefaultTableBytes);

// Rough byte count of a table up to n_max (limb storage plus per-entry overhead).
std::size_t estimate_table_bytes(const UrnSpec& spec, std::size_t n_max);

// Runs the same recurrence keeping only two rows alive and returns the rows
// listed in `wanted`. For single large n where a full table would not fit.
std::map<std::size_t, HistoryRow> history_rows(const UrnSpec& spec,
                                               std::span<const std::size_t> wanted);
HistoryRow history_row(const UrnSpec& spec, std::size_t n);

// Independent oracle: walks every colour sequence of length n, multiplying by
// the number of balls of the drawn colour. Exponential; n <= 8 only.
inline constexpr std::size_t kOracleMaxSteps = 8;
HistoryRow brute_force_histories(const UrnSpec& spec, std::size_t n);

// prod_{m=0}^{n-1} (a0 + b0 + sigma*m).
BigInt total_histories(const UrnSpec& spec, std::size_t n);

// Versioned on-disk form: {schema, version, spec, n_max, rows: [[ "int", ...], ...]}.
inline constexpr int kHistoryTableVersion = 1;
nlohmann::json to_json(const HistoryTable& table);
// Validates shape, spec and every row sum; throws UrnError(MalformedDocument).
HistoryTable history_table_from_json(const nlohmann::json& doc);

// Single row: {schema, version, spec, n, counts: ["int", ...]}. Reading checks
// the spec, n, length and row sum.
nlohmann::json row_to_json(const UrnSpec& spec, std::size_t n, std::span<const BigInt> row);
HistoryRow history_row_from_json(const nlohmann::json& doc, const UrnSpec& spec, std::size_t n);

nlohmann::json spec_to_json(const UrnSpec& spec);
UrnSpec spec_from_json(const nlohmann::json& doc);

}  // namespace urnlab
