#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dcov/fundamental.hpp"
#include "dcov/inference.hpp"
#include "dcov/types.hpp"

namespace dcov {

/// Columns making up the X and Y blocks. Each entry is a header name or a
/// 0-based column index.
struct ColumnSpec {
  std::vector<std::string> x_columns;
  std::vector<std::string> y_columns;
};

struct CsvOptions {
  bool header = false;
  /// Strict: a non-numeric or missing selected cell is an error.
  /// Lenient: such rows are dropped and counted.
  bool strict = true;
};

struct CsvData {
  PairedSample sample;
  std::size_t dropped_rows = 0;
  std::vector<std::string> x_names;
  std::vector<std::string> y_names;
};

/// Comma-separated, '.' decimal point, no quoting. Row numbers in error
/// messages are 1-based file lines.
CsvData read_csv(const std::filesystem::path& path, const ColumnSpec& columns,
                 const CsvOptions& options = {});
CsvData parse_csv(std::istream& in, const ColumnSpec& columns, const CsvOptions& options = {});

/// Header x0..x{p-1},y0..y{q-1}; values with 17 significant digits.
void write_csv(std::ostream& out, const PairedSample& sample);
void write_csv(const std::filesystem::path& path, const PairedSample& sample);

/// UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string iso8601_now();

using Json = nlohmann::ordered_json;

Json to_json(const TestReport& report, const std::string& timestamp);
Json to_json(const DCovEstimate& estimate);
Json to_json(const IntegralCheck& check);

}  // namespace dcov
