#include "run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "branchcover/errors.hpp"

namespace branchcover::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  if (!(in >> out) || !(in >> std::ws).eof()) throw ValidationError("config key '" + key + "' needs a number, got '" + value + "'");
  return out;
}

bool boolean(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ValidationError("config key '" + key + "' needs true or false");
}

std::filesystem::path path_value(const std::string& value, const std::filesystem::path& base) {
  if (value.empty()) return {};
  std::filesystem::path p(value);
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  throw ValidationError("format must be json, csv or table");
}

std::string format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Table: return "table";
  }
  return "table";
}

void RunConfig::set(const std::string& key, const std::string& value, const std::filesystem::path& base) {
  if (key == "coset_cap") coset_cap = number<std::size_t>(key, value);
  else if (key == "group_cap") group_cap = number<std::size_t>(key, value);
  else if (key == "tolerance.grid") tolerances.grid = number<double>(key, value);
  else if (key == "tolerance.minimization") tolerances.minimization = number<double>(key, value);
  else if (key == "tolerance.oracle_gate") tolerances.oracle_gate = number<double>(key, value);
  else if (key == "tolerance.cone_angle") tolerances.cone_angle = number<double>(key, value);
  else if (key == "corpus") corpus = path_value(value, base);
  else if (key == "cache") cache = path_value(value, base);
  else if (key == "format") format = parse_format(value);
  else if (key == "seed") seed = number<std::uint64_t>(key, value);
  else if (key == "workers") workers = number<std::size_t>(key, value);
  else if (key == "timings") timings = boolean(key, value);
  else throw ValidationError("unknown config key '" + key + "'");
}

void RunConfig::check() const {
  if (coset_cap < 1 || group_cap < 1) throw ValidationError("caps must be at least 1");
  if (workers < 1) throw ValidationError("workers must be at least 1");
  for (double t : {tolerances.grid, tolerances.minimization, tolerances.oracle_gate, tolerances.cone_angle})
    if (!(t > 0)) throw ValidationError("tolerances must be positive");
}

RunConfig RunConfig::parse(std::istream& in, const std::filesystem::path& base) {
  RunConfig c;
  std::string line;
  std::size_t number_of_line = 0;
  while (std::getline(in, line)) {
    ++number_of_line;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(number_of_line) + " is not 'key = value'");
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base);
  }
  c.check();
  return c;
}

RunConfig RunConfig::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot read config file " + file.string());
  return parse(in, file.parent_path());
}

RunConfig RunConfig::resolve(const std::string& flag) {
  if (!flag.empty()) return load(flag);
  if (const char* env = std::getenv("BRANCHCOVER_CONFIG"); env && *env) return load(env);
  return load(BRANCHCOVER_DEFAULT_CONFIG);
}

}  // namespace branchcover::cli
