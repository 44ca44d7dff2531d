#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace crw::cli {

inline constexpr int kSchemaVersion = 1;

/// A table of rows sharing one column list, plus run metadata. Cells are
/// JSON scalars; null means "not applicable" (empty CSV field).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

/// 17 significant digits (printf %.17g), enough to round-trip any double.
std::string format_double(double value);

/// Compact JSON with every float printed via format_double; non-finite
/// floats become null. Keys keep insertion order.
std::string to_json_text(const nlohmann::ordered_json& value);

/// Header row, data rows, then '#' footer lines with schema version and meta.
void write_csv(std::ostream& os, const Table& table);

/// {"meta": {...}, "rows": [{column: value, ...}, ...]}
void write_json(std::ostream& os, const Table& table);

}  // namespace crw::cli
