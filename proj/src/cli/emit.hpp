#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace stfields::cli {

inline constexpr const char* kRealizationSchema = "stfields.realizations/1";
inline constexpr const char* kCovarianceSchema = "stfields.covariance/1";
inline constexpr const char* kExpansionSchema = "stfields.expansion/1";
inline constexpr const char* kCoefficientSchema = "stfields.coefficients/1";
inline constexpr const char* kManifestSchema = "stfields.manifest/1";

/// 17 significant digits; -0 prints as 0.
std::string format_number(double x);

/// Row-oriented table written as CSV (first line "# schema: <name>") or as
/// JSON {"schema", "columns", "rows"}.
class Table {
 public:
  Table(std::string schema, std::vector<std::string> columns);

  void add_row(std::vector<double> row);
  std::size_t rows() const noexcept { return rows_.size(); }

  std::string to_csv() const;
  std::string to_json() const;

 private:
  std::string schema_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

/// Writes `content` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& content);

struct CsvData {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// Reads a file written by Table::to_csv; ConfigError on malformed input.
CsvData read_csv(const std::filesystem::path& path);

}  // namespace stfields::cli
