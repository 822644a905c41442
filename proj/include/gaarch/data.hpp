#pragma once

#include <string>
#include <vector>

namespace gaarch {

struct YearMonth {
  int year;
  int month;  // 1..12

  bool operator==(const YearMonth&) const = default;
  YearMonth next() const;
  std::string str() const;  // "YYYY-MM"
};

/// Parses "YYYY-MM" or "YYYY-MM-DD" (day ignored).
YearMonth parse_year_month(const std::string& text);

/// Dated monthly simple returns in decimal units.
struct ReturnSeries {
  std::string label;
  std::vector<YearMonth> dates;
  std::vector<double> returns;

  std::size_t size() const { return returns.size(); }

  /// Checks: length >= 2, dates consecutive months, returns finite and > -1.
  void validate() const;
};

struct CsvOptions {
  std::string date_column = "date";
  std::string value_column;  // empty: first non-date column
  bool percent = false;      // divide values by 100
};

ReturnSeries load_csv(const std::string& path, const CsvOptions& options = {});

void save_csv(const ReturnSeries& series, const std::string& path);

struct FitResult;

/// Fit-file round trip: monthly decimal units on disk, never annualized.
void save_fit(const FitResult& result, const std::string& path);
FitResult load_fit(const std::string& path);

}  // namespace gaarch
