#include "dcov/io.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_set>

#include "dcov/errors.hpp"

namespace dcov {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(std::string_view(line).substr(start)));
      break;
    }
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::size_t resolve_column(const std::string& token, const std::vector<std::string>& header,
                           std::size_t arity) {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == token) return c;
  }
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DataError("unknown column '" + token + "'");
  }
  if (index >= arity) {
    throw DataError("column index " + token + " out of range (file has " + std::to_string(arity) +
                    " columns)");
  }
  return index;
}

}  // namespace

CsvData parse_csv(std::istream& in, const ColumnSpec& columns, const CsvOptions& options) {
  if (columns.x_columns.empty() || columns.y_columns.empty()) {
    throw DomainError("both X and Y column selections must be nonempty");
  }

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  std::size_t arity = 0;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (arity == 0) {
      arity = fields.size();
      if (options.header) {
        header = std::move(fields);
        continue;
      }
    } else if (fields.size() != arity) {
      throw DataError("row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                      " fields, expected " + std::to_string(arity));
    }
    rows.push_back(std::move(fields));
    row_lines.push_back(line_no);
  }
  if (arity == 0) throw DataError("empty CSV input");

  std::vector<std::size_t> xc, yc;
  for (const auto& t : columns.x_columns) xc.push_back(resolve_column(t, header, arity));
  for (const auto& t : columns.y_columns) yc.push_back(resolve_column(t, header, arity));
  std::unordered_set<std::size_t> seen(xc.begin(), xc.end());
  for (std::size_t c : yc) {
    if (seen.count(c)) {
      throw DomainError("column " + std::to_string(c) + " selected for both X and Y");
    }
  }

  std::vector<double> xv, yv;
  std::size_t kept = 0, dropped = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<double> xr(xc.size()), yr(yc.size());
    bool ok = true;
    auto read = [&](const std::vector<std::size_t>& cols, std::vector<double>& out) {
      for (std::size_t k = 0; k < cols.size() && ok; ++k) {
        if (!parse_double(rows[r][cols[k]], out[k])) {
          if (options.strict) {
            throw DataError("non-numeric value '" + rows[r][cols[k]] + "' at row " +
                            std::to_string(row_lines[r]) + ", column " + std::to_string(cols[k]));
          }
          ok = false;
        }
      }
    };
    read(xc, xr);
    read(yc, yr);
    if (!ok) {
      ++dropped;
      continue;
    }
    xv.insert(xv.end(), xr.begin(), xr.end());
    yv.insert(yv.end(), yr.begin(), yr.end());
    ++kept;
  }
  if (kept == 0) throw DataError("no usable rows in CSV input");

  auto names = [&](const std::vector<std::size_t>& cols) {
    std::vector<std::string> out;
    for (std::size_t c : cols) out.push_back(header.empty() ? std::to_string(c) : header[c]);
    return out;
  };
  return CsvData{PairedSample(Matrix(kept, xc.size(), std::move(xv)),
                              Matrix(kept, yc.size(), std::move(yv))),
                 dropped, names(xc), names(yc)};
}

CsvData read_csv(const std::filesystem::path& path, const ColumnSpec& columns,
                 const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return parse_csv(in, columns, options);
}

void write_csv(std::ostream& out, const PairedSample& sample) {
  for (std::size_t a = 0; a < sample.p(); ++a) out << (a ? "," : "") << 'x' << a;
  for (std::size_t b = 0; b < sample.q(); ++b) out << ",y" << b;
  out << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < sample.n(); ++i) {
    const auto x = sample.x().row(i);
    const auto y = sample.y().row(i);
    for (std::size_t a = 0; a < x.size(); ++a) out << (a ? "," : "") << x[a];
    for (double v : y) out << ',' << v;
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path, const PairedSample& sample) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_csv(out, sample);
}

std::string iso8601_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

Json to_json(const TestReport& report, const std::string& timestamp) {
  Json j;
  j["method"] = to_string(report.method);
  j["statistic"] = to_string(report.statistic);
  j["observed"] = report.observed;
  j["replicates"] = report.replicates;
  j["p_value"] = report.p_value;
  j["seed"] = report.seed;
  j["n"] = report.n;
  j["p"] = report.p;
  j["q"] = report.q;
  j["runtime_ms"] = report.runtime_ms;
  j["timestamp"] = timestamp;
  return j;
}

Json to_json(const DCovEstimate& estimate) {
  Json j;
  j["kind"] = to_string(estimate.kind);
  j["value"] = estimate.value;
  j["n"] = estimate.n;
  j["p"] = estimate.p;
  j["q"] = estimate.q;
  if (estimate.kind == EstimatorKind::cf_mc) j["standard_error"] = estimate.standard_error;
  return j;
}

Json to_json(const IntegralCheck& check) {
  Json j;
  j["dimension"] = check.dimension;
  j["argument"] = check.argument;
  j["numeric_estimate"] = check.numeric_estimate;
  j["closed_form"] = check.closed_form;
  j["standard_error"] = check.standard_error;
  j["sample_count"] = check.sample_count;
  j["error_bound"] = check.error_bound;
  return j;
}

}  // namespace dcov
