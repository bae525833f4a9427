#include "result_cache.hpp"

#include <cstdio>
#include <fstream>
#include <mutex>

#include "branchcover/errors.hpp"

namespace branchcover::cli {

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultCache::ResultCache(std::filesystem::path file) : file_(std::move(file)) {
  if (file_.empty()) return;
  std::ifstream in(file_);
  std::string line;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    entries_[line.substr(0, tab)] = line.substr(tab + 1);
  }
}

std::string ResultCache::key(std::string_view name, std::string_view format, std::string_view input,
                             std::size_t coset_cap, bool timings) {
  std::string payload(kAlgorithmVersion);
  for (std::string_view part : {name, format, input}) {
    payload += '\x1f';
    payload += part;
  }
  payload += "\x1f" "cap=" + std::to_string(coset_cap) + (timings ? "\x1f" "timed" : "");
  return fnv1a_hex(payload);
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
  if (file_.empty()) return std::nullopt;
  std::shared_lock lock(mutex_);
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ResultCache::put(const std::string& key, std::string record) {
  if (file_.empty()) return;
  std::unique_lock lock(mutex_);
  entries_[key] = std::move(record);
}

void ResultCache::save() const {
  if (file_.empty()) return;
  std::shared_lock lock(mutex_);
  if (file_.has_parent_path()) std::filesystem::create_directories(file_.parent_path());
  const auto tmp = std::filesystem::path(file_.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ValidationError("cannot write cache file " + tmp.string());
    for (const auto& [k, v] : entries_) out << k << '\t' << v << '\n';
  }
  std::filesystem::rename(tmp, file_);
}

std::size_t ResultCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

}  // namespace branchcover::cli
