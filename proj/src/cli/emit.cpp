#include "cli/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "stfields/errors.hpp"

namespace stfields::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Table::Table(std::string schema, std::vector<std::string> columns)
    : schema_(std::move(schema)), columns_(std::move(columns)) {}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns_.size()) throw InvalidParameter("table row has the wrong width");
  rows_.push_back(std::move(row));
}

std::string Table::to_csv() const {
  std::string out = "# schema: " + schema_ + "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += format_number(row[c]);
    }
    out += '\n';
  }
  return out;
}

std::string Table::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = schema_;
  doc["columns"] = columns_;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    auto r = nlohmann::ordered_json::array();
    for (double v : row) {
      if (std::isfinite(v)) {
        r.push_back(v);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(1) + "\n";
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw ConfigError("write to '" + path.string() + "' failed");
}

CsvData read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  CsvData data;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# schema: ", 0) != 0) {
    throw ConfigError("'" + path.string() + "' has no schema header line");
  }
  data.schema = line.substr(10);
  if (!std::getline(in, line)) throw ConfigError("'" + path.string() + "' has no column header");
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) data.columns.push_back(col);
  }
  std::size_t line_no = 2;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw ConfigError("'" + path.string() + "' line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      row.push_back(v);
    }
    if (row.size() != data.columns.size()) {
      throw ConfigError("'" + path.string() + "' line " + std::to_string(line_no) + ": wrong column count");
    }
    data.rows.push_back(std::move(row));
  }
  return data;
}

}  // namespace stfields::cli
