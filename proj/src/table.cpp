#include "lambdatherm/table.hpp"

#include <cmath>

#include <json.hpp>

#include "lambdatherm/scenario.hpp"

namespace lambdatherm {

namespace {

std::string csv_field(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return std::isfinite(v) ? format_number(v) : "nan"; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "1" : "0"; }
    std::string operator()(const std::string& v) const {
      if (v.find_first_of(",\"\n") == std::string::npos) return v;
      std::string quoted = "\"";
      for (char c : v) {
        if (c == '"') quoted += '"';
        quoted += c == '\n' ? ' ' : c;
      }
      return quoted + "\"";
    }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table, const Metadata& metadata) {
  for (const auto& [key, value] : metadata) out << "# " << key << " = " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table, const Metadata& metadata) {
  nlohmann::ordered_json doc;
  doc["schema"] = "lambdatherm-table";
  doc["schema_version"] = kTableSchemaVersion;
  auto& meta = doc["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : metadata) meta[key] = value;
  doc["columns"] = table.columns;
  auto& rows = doc["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < table.columns.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              obj[table.columns[i]] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
            else
              obj[table.columns[i]] = v;
          },
          row[i]);
    }
    rows.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace lambdatherm
