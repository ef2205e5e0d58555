#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>

#include "urnlab/history.hpp"

namespace urnlab::cli {

// Exact history rows, optionally persisted one file per (urn, n) under a
// cache directory. Missing rows are computed in a single DP pass.
class RowCache {
 public:
  explicit RowCache(std::optional<std::filesystem::path> dir);

  std::map<std::size_t, HistoryRow> rows(const UrnSpec& spec, std::span<const std::size_t> wanted) const;
  HistoryRow row(const UrnSpec& spec, std::size_t n) const;

  std::filesystem::path path_for(const UrnSpec& spec, std::size_t n) const;

 private:
  std::optional<std::filesystem::path> dir_;
};

}  // namespace urnlab::cli
