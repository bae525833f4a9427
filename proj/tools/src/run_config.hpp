#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "branchcover/orbit.hpp"

namespace branchcover::cli {

enum class OutputFormat { Json, Csv, Table };

OutputFormat parse_format(const std::string& text);
std::string format_name(OutputFormat f);

struct RunConfig {
  std::size_t coset_cap = 200000;
  std::size_t group_cap = 100000;
  orbit::Tolerances tolerances;
  std::filesystem::path corpus;
  /// Empty disables the cache.
  std::filesystem::path cache;
  OutputFormat format = OutputFormat::Table;
  std::uint64_t seed = 1;
  std::size_t workers = 2;
  bool timings = false;

  /// "key = value" lines; '#' starts a comment. Relative paths resolve against `base`.
  /// Throws ValidationError on unknown keys or out-of-range values.
  static RunConfig parse(std::istream& in, const std::filesystem::path& base);
  static RunConfig load(const std::filesystem::path& file);
  /// The --config flag, then $BRANCHCOVER_CONFIG, then the checked-in default.
  static RunConfig resolve(const std::string& flag);

  void set(const std::string& key, const std::string& value, const std::filesystem::path& base);
  void check() const;
};

}  // namespace branchcover::cli
