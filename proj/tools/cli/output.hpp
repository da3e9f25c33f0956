#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ddlab::cli {

using Cell = std::variant<std::monostate, double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

/// RFC 4180 quoting: fields with a comma, quote or line break are quoted and
/// inner quotes doubled.
std::string csv_escape(const std::string& field);

/// CSV: `# ddlab <version> <command>` and `# config: <json>` comment lines,
/// a header row, then data rows.
void write_csv(std::ostream& out, const std::string& command,
               const nlohmann::ordered_json& config, const Table& table);

/// One JSON object {version, command, config, rows, ...extra}; rows are
/// objects keyed by column name.
void write_json(std::ostream& out, const std::string& command,
                const nlohmann::ordered_json& config, const Table& table,
                const nlohmann::ordered_json& extra = nlohmann::ordered_json::object());

}  // namespace ddlab::cli
