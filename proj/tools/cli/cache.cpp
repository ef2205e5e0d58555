#include "cli/cache.hpp"

#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "urnlab/error.hpp"

namespace urnlab::cli {

RowCache::RowCache(std::optional<std::filesystem::path> dir) : dir_(std::move(dir)) {
  if (dir_) {
    std::error_code ec;
    std::filesystem::create_directories(*dir_, ec);
    if (ec) throw UrnError(ErrorCode::InvalidArgument, "cannot create cache directory " + dir_->string());
  }
}

std::filesystem::path RowCache::path_for(const UrnSpec& spec, std::size_t n) const {
  return *dir_ / fmt::format("history-{}-{}-{}-{}-n{}.json", spec.alpha(), spec.beta(), spec.a0(), spec.b0(), n);
}

std::map<std::size_t, HistoryRow> RowCache::rows(const UrnSpec& spec, std::span<const std::size_t> wanted) const {
  std::map<std::size_t, HistoryRow> out;
  std::vector<std::size_t> missing;
  for (std::size_t n : wanted) {
    if (out.count(n) != 0) continue;
    if (dir_) {
      std::ifstream in(path_for(spec, n));
      if (in) {
        const auto doc = nlohmann::json::parse(in, nullptr, false);
        if (!doc.is_discarded()) {
          try {
            out.emplace(n, history_row_from_json(doc, spec, n));
            continue;
          } catch (const UrnError&) {
            // A stale or damaged file is recomputed and overwritten below.
          }
        }
      }
    }
    missing.push_back(n);
  }
  if (missing.empty()) return out;

  auto computed = history_rows(spec, missing);
  for (auto& [n, row] : computed) {
    if (dir_) {
      const auto target = path_for(spec, n);
      const auto partial = std::filesystem::path(target.string() + ".partial");
      {
        std::ofstream file(partial);
        file << row_to_json(spec, n, row).dump();
      }
      std::error_code ec;
      std::filesystem::rename(partial, target, ec);
    }
    out.emplace(n, std::move(row));
  }
  return out;
}

HistoryRow RowCache::row(const UrnSpec& spec, std::size_t n) const {
  const std::size_t wanted[] = {n};
  return rows(spec, wanted).at(n);
}

}  // namespace urnlab::cli
