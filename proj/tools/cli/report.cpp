#include "cli/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace urnlab::cli {

Report make_report(const std::string& command) {
  Report r;
  r.json["schema_version"] = kSchemaVersion;
  r.json["command"] = command;
  return r;
}

std::string cell(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return fmt::format("{}", value);
}

std::string cell(std::int64_t value) { return fmt::format("{}", value); }
std::string cell(std::uint64_t value) { return fmt::format("{}", value); }

nlohmann::ordered_json complex_json(std::complex<double> z) {
  return nlohmann::ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_line(const std::vector<std::string>& fields, std::ostream& out) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(fields[i]);
  }
  out << '\n';
}

}  // namespace

void write_report(const Report& report, Format format, std::ostream& out) {
  if (format == Format::Json) {
    out << report.json.dump(2) << '\n';
    return;
  }
  write_csv_line(report.columns, out);
  for (const auto& row : report.rows) write_csv_line(row, out);
}

}  // namespace urnlab::cli
