#ifndef GOODTURING_REPORT_HPP
#define GOODTURING_REPORT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace goodturing {

using ReportValue = std::variant<std::int64_t, double, std::string>;

// Output document of the CLI: ordered key/value fields, optionally followed
// by one table.
//
// Text form, tab separated:
//
//   key<TAB>value          one line per field
//                          blank line, only when a table follows
//   col1<TAB>col2...       table header
//   v1<TAB>v2...           one line per row
//
// Doubles print with 17 significant digits so they parse back to the same
// value; human mode uses 6.
struct Report {
  std::vector<std::pair<std::string, ReportValue>> fields;
  std::vector<std::string> columns;
  std::vector<std::vector<ReportValue>> rows;

  Report& add(std::string key, ReportValue value) {
    fields.emplace_back(std::move(key), std::move(value));
    return *this;
  }
  const ReportValue* find(std::string_view key) const;
  double number(std::string_view key) const;
};

std::string format_value(const ReportValue& v, bool human = false);
std::string format_report(const Report& report, bool human = false);

// Integers and decimal/exponent forms come back as numbers, anything else
// as text.
ReportValue parse_value(std::string_view text);
Report parse_report(std::string_view text);

}  // namespace goodturing

#endif  // GOODTURING_REPORT_HPP
