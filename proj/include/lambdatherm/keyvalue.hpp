#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace lambdatherm {

struct KeyValueEntry {
  std::string key;
  std::string value;
  int line = 0;
};

// Flat `key = value` files: one entry per line, '#' starts a comment,
// blank lines ignored. Duplicate keys are rejected.
std::vector<KeyValueEntry> parse_key_values(std::istream& in, std::string_view source);
std::vector<KeyValueEntry> read_key_values(const std::filesystem::path& path);

/// Strict full-string conversion; throws ConfigError naming `key`.
double parse_number(std::string_view text, const std::string& key);
std::vector<std::string> split_list(std::string_view text);
std::string trim(std::string_view text);

}  // namespace lambdatherm
