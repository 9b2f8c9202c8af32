#include "table_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <stdexcept>

namespace cvqkd::cli {

namespace {

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string cell_text(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return s; }
  };
  return std::visit(Visitor{}, c);
}

std::string cell_json(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(double v) const {
      return std::isfinite(v) ? format_number(v) : "null";
    }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& s) const { return nlohmann::json(s).dump(); }
  };
  return std::visit(Visitor{}, c);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("not a number: '" + s + "'");
  }
  return v;
}

void check_shape(const analysis::SweepTable& t) {
  try {
    t.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("malformed sweep table: ") + e.what());
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, end);
}

std::string join(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_number(values[i]);
  }
  return out;
}

std::string column_label(const analysis::Column& c) {
  return c.unit.empty() ? c.name : c.name + "[" + c.unit + "]";
}

analysis::Column parse_column_label(const std::string& label) {
  const auto open = label.find('[');
  if (open == std::string::npos || label.back() != ']') return {label, ""};
  return {label.substr(0, open), label.substr(open + 1, label.size() - open - 2)};
}

std::vector<std::string> split_csv_record(const std::string& line) {
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
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw std::runtime_error("unterminated quoted CSV field");
  return fields;
}

void write_csv(std::ostream& os, const OutputTable& table) {
  for (const auto& h : table.header) os << "# " << h.key << " = " << cell_text(h.value) << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) os << ',';
    os << quote_csv(column_label(table.columns[i]));
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << quote_csv(cell_text(row[i]));
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const OutputTable& table) {
  os << "{\n  \"config\": {";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << nlohmann::json(table.header[i].key).dump() << ": "
       << cell_json(table.header[i].value);
  }
  os << (table.header.empty() ? "},\n" : "\n  },\n");
  os << "  \"columns\": [";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    os << (i ? ", " : "") << nlohmann::json(column_label(table.columns[i])).dump();
  }
  os << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    os << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      os << (i ? ", " : "") << cell_json(table.rows[r][i]);
    }
    os << ']';
  }
  os << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

OutputTable to_output(const analysis::SweepTable& sweep, std::vector<HeaderEntry> header) {
  OutputTable out;
  out.header = std::move(header);
  out.columns.push_back(sweep.variable);
  out.columns.insert(out.columns.end(), sweep.curves.begin(), sweep.curves.end());
  for (const auto& row : sweep.rows) {
    std::vector<Cell> cells{row.x};
    for (double v : row.values) cells.emplace_back(v);
    out.rows.push_back(std::move(cells));
  }
  return out;
}

analysis::SweepTable read_sweep_csv(std::istream& is) {
  analysis::SweepTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_record(line);
    if (!have_header) {
      if (fields.size() < 1) throw std::runtime_error("CSV header row is empty");
      t.variable = parse_column_label(fields[0]);
      for (std::size_t i = 1; i < fields.size(); ++i) t.curves.push_back(parse_column_label(fields[i]));
      have_header = true;
      continue;
    }
    if (fields.size() != t.curves.size() + 1) throw std::runtime_error("CSV row has wrong width");
    analysis::SweepRow row{parse_double(fields[0]), {}};
    for (std::size_t i = 1; i < fields.size(); ++i) row.values.push_back(parse_double(fields[i]));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("CSV has no header row");
  check_shape(t);
  return t;
}

analysis::SweepTable read_sweep_json(std::istream& is) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.contains("columns") || !doc.contains("rows")) {
    throw std::runtime_error("JSON table needs 'columns' and 'rows'");
  }
  analysis::SweepTable t;
  const auto& cols = doc["columns"];
  if (cols.empty()) throw std::runtime_error("JSON table has no columns");
  t.variable = parse_column_label(cols[0].get<std::string>());
  for (std::size_t i = 1; i < cols.size(); ++i) {
    t.curves.push_back(parse_column_label(cols[i].get<std::string>()));
  }
  for (const auto& r : doc["rows"]) {
    if (r.size() != cols.size()) throw std::runtime_error("JSON row has wrong width");
    analysis::SweepRow row{r[0].get<double>(), {}};
    for (std::size_t i = 1; i < r.size(); ++i) row.values.push_back(r[i].get<double>());
    t.rows.push_back(std::move(row));
  }
  check_shape(t);
  return t;
}

}  // namespace cvqkd::cli
