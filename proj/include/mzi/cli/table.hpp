#pragma once

// Tabular results and their text encodings. Numbers are written with 12
// significant digits in the "C" locale style regardless of the process
// locale.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mzi::cli {

// Shortest %.12g-style text: lowercase e-notation, '.' separator, -0 printed as 0.
std::string format_number(double value);

// The double that format_number's text denotes.
double rounded_number(double value);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of a column; throws InvalidInput when absent.
  std::size_t column(std::string_view name) const;
};

// RFC 4180 field quoting, applied only when the field needs it.
std::string csv_field(std::string_view text);

// Header row then one line per row, LF terminated.
void write_csv(std::ostream& out, const Table& table);
// Array of row objects with keys in column order.
void write_json_rows(std::ostream& out, const Table& table);
// Single object from the first row.
void write_json_object(std::ostream& out, const Table& table);

// Parses CSV produced by write_csv; numeric fields only.
Table read_csv(std::istream& in);

}  // namespace mzi::cli
