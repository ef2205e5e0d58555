#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace urnlab::cli {

inline constexpr int kSchemaVersion = 1;

enum class Format { Json, Csv };

// A command's result in both shapes: the JSON document, and a flat table for
// --format csv.
struct Report {
  nlohmann::ordered_json json;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

Report make_report(const std::string& command);
void write_report(const Report& report, Format format, std::ostream& out);

// Shortest round-trip text; nan and inf spelled out.
std::string cell(double value);
std::string cell(std::int64_t value);
std::string cell(std::uint64_t value);
inline std::string cell(int value) { return cell(static_cast<std::int64_t>(value)); }
inline std::string cell(const std::string& value) { return value; }

nlohmann::ordered_json complex_json(std::complex<double> z);

}  // namespace urnlab::cli
