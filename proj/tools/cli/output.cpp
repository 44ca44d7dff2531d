#include "output.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace crw::cli {

namespace {

void emit(std::ostream& os, const nlohmann::ordered_json& value) {
  switch (value.type()) {
    case nlohmann::ordered_json::value_t::object: {
      os << '{';
      bool first = true;
      for (const auto& [key, item] : value.items()) {
        if (!first) os << ',';
        first = false;
        os << nlohmann::ordered_json(key).dump() << ':';
        emit(os, item);
      }
      os << '}';
      break;
    }
    case nlohmann::ordered_json::value_t::array: {
      os << '[';
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) os << ',';
        emit(os, value[i]);
      }
      os << ']';
      break;
    }
    case nlohmann::ordered_json::value_t::number_float: {
      const double d = value.get<double>();
      os << (std::isfinite(d) ? format_double(d) : "null");
      break;
    }
    default:
      os << value.dump();
  }
}

std::string csv_field(const nlohmann::ordered_json& cell) {
  if (cell.is_null()) return "";
  if (cell.is_number_float()) {
    const double d = cell.get<double>();
    return std::isfinite(d) ? format_double(d) : "";
  }
  if (cell.is_string()) {
    const auto& s = cell.get_ref<const std::string&>();
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + '"';
  }
  return cell.dump();
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // print -0 as 0
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string to_json_text(const nlohmann::ordered_json& value) {
  std::ostringstream os;
  emit(os, value);
  return os.str();
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << table.columns[c];
  }
  os << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c]);
    os << "\r\n";
  }
  os << "# schema_version: " << kSchemaVersion << "\r\n";
  os << "# meta: " << to_json_text(table.meta) << "\r\n";
}

void write_json(std::ostream& os, const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  nlohmann::ordered_json meta = table.meta;
  meta["schema_version"] = kSchemaVersion;
  os << to_json_text(nlohmann::ordered_json{{"meta", meta}, {"rows", rows}}) << '\n';
}

}  // namespace crw::cli
