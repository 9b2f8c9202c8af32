#pragma once

// CSV / JSON emission of result tables.
//
// CSV: '#'-prefixed "key = value" header lines echoing the configuration,
// then a header row of unit-annotated column names ("x0[quadrature]"),
// then data rows. Fields are quoted RFC-4180 style when needed.
// JSON: {"config": {...}, "columns": [...], "rows": [[...], ...]}.
// Numbers are written with 17 significant digits so they parse back exactly.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cvqkd/analysis.hpp"

namespace cvqkd::cli {

// std::monostate is an undefined value (empty CSV field, JSON null).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct HeaderEntry {
  std::string key;
  Cell value;
};

struct OutputTable {
  std::vector<HeaderEntry> header;
  std::vector<analysis::Column> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v);
std::string join(std::span<const double> values);
// "name[unit]", or just "name" when the unit is empty.
std::string column_label(const analysis::Column& c);
analysis::Column parse_column_label(const std::string& label);

void write_csv(std::ostream& os, const OutputTable& table);
void write_json(std::ostream& os, const OutputTable& table);

OutputTable to_output(const analysis::SweepTable& sweep, std::vector<HeaderEntry> header);

// Inverse of write_csv / write_json for numeric sweep tables. Throws
// std::runtime_error on malformed input.
analysis::SweepTable read_sweep_csv(std::istream& is);
analysis::SweepTable read_sweep_json(std::istream& is);

// RFC-4180 field splitting of one CSV record.
std::vector<std::string> split_csv_record(const std::string& line);

}  // namespace cvqkd::cli
