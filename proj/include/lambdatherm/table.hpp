#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lambdatherm {

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr int kTableSchemaVersion = 1;

// CSV: '#'-prefixed metadata lines, one header row, then one row per record.
// Booleans print as 0/1, non-finite numbers as "nan".
void write_csv(std::ostream& out, const Table& table, const Metadata& metadata);

// JSON: {"schema", "schema_version", "metadata", "columns", "rows"} with one
// object per row; non-finite numbers become null.
void write_json(std::ostream& out, const Table& table, const Metadata& metadata);

}  // namespace lambdatherm
