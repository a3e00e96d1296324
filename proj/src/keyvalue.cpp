#include "lambdatherm/keyvalue.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "lambdatherm/errors.hpp"

namespace lambdatherm {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<KeyValueEntry> parse_key_values(std::istream& in, std::string_view source) {
  std::vector<KeyValueEntry> entries;
  std::set<std::string> seen;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const std::string where = std::string(source) + ":" + std::to_string(number);
    if (eq == std::string::npos) throw ConfigError("", where + ": expected 'key = value'");
    KeyValueEntry entry{trim(body.substr(0, eq)), trim(body.substr(eq + 1)), number};
    if (entry.key.empty()) throw ConfigError("", where + ": empty key");
    if (entry.value.empty()) throw ConfigError(entry.key, where + ": empty value");
    if (!seen.insert(entry.key).second) throw ConfigError(entry.key, where + ": duplicate key");
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::vector<KeyValueEntry> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open " + path.string());
  return parse_key_values(in, path.string());
}

double parse_number(std::string_view text, const std::string& key) {
  const std::string s = trim(text);
  double value = 0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc() || ptr != end) throw ConfigError(key, "not a number: '" + s + "'");
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    items.push_back(trim(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

}  // namespace lambdatherm
