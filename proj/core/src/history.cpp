#include "urnlab/history.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "urnlab/error.hpp"

namespace urnlab {
namespace {

constexpr const char* kHistorySchema = "urnlab.history_table";
constexpr const char* kHistoryRowSchema = "urnlab.history_row";

// One DP step: row for n -> row for n + 1.
HistoryRow advance(const UrnSpec& spec, std::size_t n, const HistoryRow& row) {
  HistoryRow next(row.size() + 1);
  const auto sn = static_cast<std::int64_t>(n);
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (sgn(row[k]) == 0) continue;
    const auto sk = static_cast<std::int64_t>(k);
    const auto black = static_cast<unsigned long>(spec.black(sn, sk));
    const auto white = static_cast<unsigned long>(spec.white(sn, sk));
    mpz_addmul_ui(next[k + 1].get_mpz_t(), row[k].get_mpz_t(), black);
    mpz_addmul_ui(next[k].get_mpz_t(), row[k].get_mpz_t(), white);
  }
  return next;
}

void brute_force_walk(const UrnSpec& spec, std::size_t remaining, std::int64_t black,
                      std::int64_t white, std::size_t k, const BigInt& weight, HistoryRow& out) {
  if (remaining == 0) {
    out[k] += weight;
    return;
  }
  if (black > 0) {
    brute_force_walk(spec, remaining - 1, black + 2 * spec.alpha(), white + spec.beta(), k + 1,
                     weight * black, out);
  }
  if (white > 0) {
    brute_force_walk(spec, remaining - 1, black + spec.alpha(), white + spec.alpha() + spec.beta(),
                     k, weight * white, out);
  }
}

BigInt parse_count(const nlohmann::json& cell) {
  if (!cell.is_string()) throw UrnError(ErrorCode::MalformedDocument, "counts must be strings");
  const std::string& text = cell.get_ref<const std::string&>();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw UrnError(ErrorCode::MalformedDocument, "not a non-negative integer: '" + text + "'");
  }
  return BigInt(text);
}

}  // namespace

std::span<const BigInt> HistoryTable::row(std::size_t n) const {
  if (n >= rows_.size()) {
    throw UrnError(ErrorCode::RowMissing, "row " + std::to_string(n) + " not in table (n_max=" +
                                              std::to_string(n_max()) + ")");
  }
  return rows_[n];
}

std::size_t estimate_table_bytes(const UrnSpec& spec, std::size_t n_max) {
  double bytes = 0.0;
  double bits = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const double per_entry = 32.0 + std::ceil(bits / 64.0) * 8.0;
    bytes += per_entry * static_cast<double>(n + 1);
    bits += std::log2(static_cast<double>(spec.total_balls(static_cast<std::int64_t>(n))));
  }
  return bytes > 1.8e19 ? SIZE_MAX : static_cast<std::size_t>(bytes);
}

HistoryTable build_history_table(const UrnSpec& spec, std::size_t n_max, std::size_t max_bytes) {
  const std::size_t estimate = estimate_table_bytes(spec, n_max);
  if (estimate > max_bytes) {
    throw UrnError(ErrorCode::CapacityExceeded,
                   "table up to n=" + std::to_string(n_max) + " needs ~" +
                       std::to_string(estimate >> 20) + " MiB, bound is " +
                       std::to_string(max_bytes >> 20) + " MiB");
  }
  std::vector<HistoryRow> rows;
  rows.reserve(n_max + 1);
  rows.push_back(HistoryRow{BigInt(1)});
  for (std::size_t n = 0; n < n_max; ++n) rows.push_back(advance(spec, n, rows.back()));
  return {spec, std::move(rows)};
}

std::map<std::size_t, HistoryRow> history_rows(const UrnSpec& spec,
                                               std::span<const std::size_t> wanted) {
  std::map<std::size_t, HistoryRow> out;
  if (wanted.empty()) return out;
  const std::size_t last = *std::max_element(wanted.begin(), wanted.end());
  auto is_wanted = [&](std::size_t n) {
    return std::find(wanted.begin(), wanted.end(), n) != wanted.end();
  };
  HistoryRow row{BigInt(1)};
  if (is_wanted(0)) out.emplace(0, row);
  for (std::size_t n = 0; n < last; ++n) {
    row = advance(spec, n, row);
    if (is_wanted(n + 1)) out.emplace(n + 1, row);
  }
  return out;
}

HistoryRow history_row(const UrnSpec& spec, std::size_t n) {
  const std::size_t wanted[] = {n};
  return std::move(history_rows(spec, wanted).at(n));
}

HistoryRow brute_force_histories(const UrnSpec& spec, std::size_t n) {
  if (n > kOracleMaxSteps) {
    throw UrnError(ErrorCode::OracleTooLarge, "brute-force oracle is limited to n <= " +
                                                  std::to_string(kOracleMaxSteps));
  }
  HistoryRow out(n + 1);
  brute_force_walk(spec, n, spec.a0(), spec.b0(), 0, BigInt(1), out);
  return out;
}

BigInt total_histories(const UrnSpec& spec, std::size_t n) {
  BigInt product(1);
  for (std::size_t m = 0; m < n; ++m) {
    product *= static_cast<unsigned long>(spec.total_balls(static_cast<std::int64_t>(m)));
  }
  return product;
}

nlohmann::json spec_to_json(const UrnSpec& spec) {
  return {{"alpha", spec.alpha()}, {"beta", spec.beta()}, {"a0", spec.a0()}, {"b0", spec.b0()}};
}

UrnSpec spec_from_json(const nlohmann::json& doc) {
  try {
    return validate_urn(doc.at("alpha").get<std::int64_t>(), doc.at("beta").get<std::int64_t>(),
                        doc.at("a0").get<std::int64_t>(), doc.at("b0").get<std::int64_t>());
  } catch (const nlohmann::json::exception& e) {
    throw UrnError(ErrorCode::MalformedDocument, std::string("bad spec: ") + e.what());
  }
}

nlohmann::json to_json(const HistoryTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t n = 0; n <= table.n_max(); ++n) {
    nlohmann::json row = nlohmann::json::array();
    for (const BigInt& c : table.row(n)) row.push_back(c.get_str());
    rows.push_back(std::move(row));
  }
  return {{"schema", kHistorySchema},
          {"version", kHistoryTableVersion},
          {"spec", spec_to_json(table.spec())},
          {"n_max", table.n_max()},
          {"rows", std::move(rows)}};
}

namespace {

std::pair<UrnSpec, std::vector<HistoryRow>> table_parts_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("schema", "") != kHistorySchema) {
    throw UrnError(ErrorCode::MalformedDocument, "not a history table document");
  }
  if (!doc.contains("version") || doc["version"] != kHistoryTableVersion) {
    throw UrnError(ErrorCode::MalformedDocument, "unsupported history table version");
  }
  const UrnSpec spec = spec_from_json(doc.at("spec"));
  const auto& rows_doc = doc.at("rows");
  if (!doc.at("n_max").is_number_unsigned() || !rows_doc.is_array() ||
      rows_doc.size() != doc["n_max"].get<std::size_t>() + 1) {
    throw UrnError(ErrorCode::MalformedDocument, "row count does not match n_max");
  }
  std::vector<HistoryRow> rows;
  rows.reserve(rows_doc.size());
  BigInt expected_total(1);
  for (std::size_t n = 0; n < rows_doc.size(); ++n) {
    if (n > 0) expected_total *= static_cast<unsigned long>(spec.total_balls(static_cast<std::int64_t>(n - 1)));
    const auto& row_doc = rows_doc[n];
    if (!row_doc.is_array() || row_doc.size() != n + 1) {
      throw UrnError(ErrorCode::MalformedDocument, "row " + std::to_string(n) + " has wrong length");
    }
    HistoryRow row;
    row.reserve(n + 1);
    BigInt sum(0);
    for (const auto& cell : row_doc) {
      row.push_back(parse_count(cell));
      sum += row.back();
    }
    if (sum != expected_total) {
      throw UrnError(ErrorCode::MalformedDocument,
                     "row " + std::to_string(n) + " does not sum to the total history count");
    }
    rows.push_back(std::move(row));
  }
  return {spec, std::move(rows)};
}

HistoryRow row_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || doc.value("schema", "") != kHistoryRowSchema) {
    throw UrnError(ErrorCode::MalformedDocument, "not a history row document");
  }
  if (!doc.contains("version") || doc["version"] != kHistoryTableVersion) {
    throw UrnError(ErrorCode::MalformedDocument, "unsupported history row version");
  }
  const UrnSpec spec = spec_from_json(doc.at("spec"));
  if (!doc.at("n").is_number_unsigned()) throw UrnError(ErrorCode::MalformedDocument, "n must be unsigned");
  const auto n = doc["n"].get<std::size_t>();
  const auto& counts = doc.at("counts");
  if (!counts.is_array() || counts.size() != n + 1) {
    throw UrnError(ErrorCode::MalformedDocument, "row has wrong length");
  }
  HistoryRow row;
  row.reserve(n + 1);
  BigInt sum(0);
  for (const auto& cell : counts) {
    row.push_back(parse_count(cell));
    sum += row.back();
  }
  if (sum != total_histories(spec, n)) {
    throw UrnError(ErrorCode::MalformedDocument, "row does not sum to the total history count");
  }
  return row;
}

}  // namespace

HistoryTable history_table_from_json(const nlohmann::json& doc) {
  try {
    auto [spec, rows] = table_parts_from_json(doc);
    return HistoryTable(spec, std::move(rows));
  } catch (const nlohmann::json::exception& e) {
    throw UrnError(ErrorCode::MalformedDocument, e.what());
  }
}

nlohmann::json row_to_json(const UrnSpec& spec, std::size_t n, std::span<const BigInt> row) {
  nlohmann::json counts = nlohmann::json::array();
  for (const auto& c : row) counts.push_back(c.get_str());
  return nlohmann::json{{"schema", kHistoryRowSchema},
                        {"version", kHistoryTableVersion},
                        {"spec", spec_to_json(spec)},
                        {"n", n},
                        {"counts", std::move(counts)}};
}

HistoryRow history_row_from_json(const nlohmann::json& doc, const UrnSpec& spec, std::size_t n) {
  try {
    if (spec_from_json(doc.at("spec")) != spec || doc.at("n") != n) {
      throw UrnError(ErrorCode::MalformedDocument, "row document is for a different urn or step");
    }
    return row_from_json(doc);
  } catch (const nlohmann::json::exception& e) {
    throw UrnError(ErrorCode::MalformedDocument, e.what());
  }
}

}  // namespace urnlab
