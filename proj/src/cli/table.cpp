#include "mzi/cli/table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "mzi/errors.hpp"

namespace mzi::cli {

namespace {

constexpr int kSignificantDigits = 12;

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw InvalidInput("not a number: '" + std::string(text) + "'");
  return value;
}

// Splits one CSV record, honouring quoted fields.
std::vector<std::string> split_record(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) throw InvalidInput("unterminated quoted CSV field");
  return fields;
}

nlohmann::ordered_json row_object(const Table& table, const std::vector<double>& row) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    // nlohmann prints the shortest round-trip text, which for a value that
    // already has 12 significant digits is those digits.
    obj[table.columns[c]] = rounded_number(row[c]);
  }
  return obj;
}

}  // namespace

std::string format_number(double value) {
  if (value == 0.0) return "0";
  if (!std::isfinite(value)) throw InvalidInput("cannot format a non-finite value");
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general,
                                 kSignificantDigits);
  return std::string(buf.data(), res.ptr);
}

double rounded_number(double value) { return value == 0.0 ? 0.0 : parse_number(format_number(value)); }

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw InvalidInput("no column named '" + std::string(name) + "'");
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << csv_field(table.columns[c]);
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

void write_json_rows(std::ostream& out, const Table& table) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) arr.push_back(row_object(table, row));
  out << arr.dump(2) << '\n';
}

void write_json_object(std::ostream& out, const Table& table) {
  if (table.rows.empty()) throw InvalidInput("no row to write");
  out << row_object(table, table.rows.front()).dump(2) << '\n';
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty CSV input");
  table.columns = split_record(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_record(line);
    if (fields.size() != table.columns.size()) throw InvalidInput("CSV row has the wrong number of fields");
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_number(f));
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace mzi::cli
