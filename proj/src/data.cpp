#include "gaarch/data.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace gaarch {

YearMonth YearMonth::next() const {
  return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

std::string YearMonth::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
  return buf;
}

YearMonth parse_year_month(const std::string& text) {
  int y = 0, m = 0, d = 0;
  const int got = std::sscanf(text.c_str(), "%d-%d-%d", &y, &m, &d);
  if (got < 2 || m < 1 || m > 12 || y < 1)
    throw std::invalid_argument("invalid date '" + text +
                                "' (expected YYYY-MM or YYYY-MM-DD)");
  return YearMonth{y, m};
}

void ReturnSeries::validate() const {
  if (returns.size() < 2)
    throw std::invalid_argument("return series must have length >= 2");
  if (dates.size() != returns.size())
    throw std::invalid_argument("dates and returns length mismatch");
  for (std::size_t i = 0; i < returns.size(); ++i) {
    if (!std::isfinite(returns[i]) || returns[i] <= -1.0)
      throw std::invalid_argument("invalid return at " + dates[i].str());
    if (i > 0 && !(dates[i] == dates[i - 1].next()))
      throw std::invalid_argument("month gap: expected " +
                                  dates[i - 1].next().str() + ", found " +
                                  dates[i].str());
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim whitespace and CR
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? ""
                                            : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::string file_stem(const std::string& path) {
  const auto slash = path.find_last_of("/\\");
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = name.find_last_of('.');
  return dot == std::string::npos ? name : name.substr(0, dot);
}

}  // namespace

ReturnSeries load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty file '" + path + "'");
  const auto header = split_csv_line(line);

  int date_idx = -1, value_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == options.date_column) date_idx = static_cast<int>(i);
    if (!options.value_column.empty() && header[i] == options.value_column)
      value_idx = static_cast<int>(i);
  }
  if (date_idx < 0)
    throw std::runtime_error("missing column '" + options.date_column +
                             "' in '" + path + "'");
  if (options.value_column.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (static_cast<int>(i) != date_idx) {
        value_idx = static_cast<int>(i);
        break;
      }
  }
  if (value_idx < 0)
    throw std::runtime_error("missing column '" + options.value_column +
                             "' in '" + path + "'");

  ReturnSeries series;
  series.label = file_stem(path);
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (static_cast<int>(fields.size()) <= std::max(date_idx, value_idx))
      throw std::runtime_error("row " + std::to_string(row) +
                               ": too few columns");
    const YearMonth ym = parse_year_month(fields[date_idx]);
    double value;
    try {
      std::size_t pos = 0;
      value = std::stod(fields[value_idx], &pos);
      if (pos != fields[value_idx].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::runtime_error("row " + std::to_string(row) +
                               ": non-numeric value '" + fields[value_idx] +
                               "'");
    }
    if (options.percent) value /= 100.0;

    if (!series.dates.empty() && !(ym == series.dates.back().next()))
      throw std::runtime_error("month gap: missing " +
                               series.dates.back().next().str() + " before " +
                               ym.str());
    series.dates.push_back(ym);
    series.returns.push_back(value);
  }
  if (series.returns.empty())
    throw std::runtime_error("no data rows in '" + path + "'");
  return series;
}

void save_csv(const ReturnSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "date,return\n";
  out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < series.returns.size(); ++i)
    out << series.dates[i].str() << ',' << series.returns[i] << '\n';
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace gaarch
