#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>

namespace branchcover::cli {

/// Bumped whenever a change to the analysis could alter a report.
inline constexpr std::string_view kAlgorithmVersion = "cover-pipeline/3";

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// Serialized reports keyed by a content hash. Reads may run concurrently; writes are exclusive.
/// The file holds one "key<TAB>record" line per entry, sorted by key.
class ResultCache {
 public:
  ResultCache() = default;
  /// An empty path gives a cache that never hits and never saves.
  explicit ResultCache(std::filesystem::path file);

  static std::string key(std::string_view name, std::string_view format, std::string_view input, std::size_t coset_cap,
                         bool timings);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, std::string record);
  /// Writes through a temporary file so an interrupted run leaves the old cache intact.
  void save() const;
  std::size_t size() const;

 private:
  std::filesystem::path file_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::string> entries_;
};

}  // namespace branchcover::cli
