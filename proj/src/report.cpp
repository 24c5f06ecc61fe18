#include "goodturing/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace goodturing {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

}  // namespace

const ReportValue* Report::find(std::string_view key) const {
  for (const auto& [k, v] : fields) {
    if (k == key) return &v;
  }
  return nullptr;
}

double Report::number(std::string_view key) const {
  const ReportValue* v = find(key);
  if (!v) throw std::out_of_range("report has no field " + std::string(key));
  if (const auto* i = std::get_if<std::int64_t>(v)) return static_cast<double>(*i);
  if (const auto* d = std::get_if<double>(v)) return *d;
  throw std::invalid_argument("report field " + std::string(key) + " is not numeric");
}

std::string format_value(const ReportValue& v, bool human) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  const double d = std::get<double>(v);
  if (std::isnan(d)) return "nan";
  if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, human ? "%.6g" : "%.17g", d);
  std::string out = buf;
  // Keep integral doubles distinguishable from integers when parsed back.
  if (!human && out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

std::string format_report(const Report& report, bool human) {
  std::ostringstream out;
  for (const auto& [key, value] : report.fields) out << key << '\t' << format_value(value, human) << '\n';
  if (!report.columns.empty()) {
    if (!report.fields.empty()) out << '\n';
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      out << (i ? "\t" : "") << report.columns[i];
    }
    out << '\n';
    for (const auto& row : report.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << format_value(row[i], human);
      out << '\n';
    }
  }
  return out.str();
}

ReportValue parse_value(std::string_view text) {
  std::int64_t i = 0;
  auto [iend, ierr] = std::from_chars(text.data(), text.data() + text.size(), i);
  if (ierr == std::errc() && iend == text.data() + text.size() && !text.empty()) return i;
  if (text == "nan") return std::nan("");
  if (text == "inf") return HUGE_VAL;
  if (text == "-inf") return -HUGE_VAL;
  // from_chars for double is not available on every standard library yet.
  const std::string owned(text);
  char* end = nullptr;
  const double d = std::strtod(owned.c_str(), &end);
  if (!owned.empty() && end == owned.c_str() + owned.size()) return d;
  return owned;
}

Report parse_report(std::string_view text) {
  Report report;
  std::istringstream in{std::string(text)};
  std::string line;
  bool in_table = false;
  while (std::getline(in, line)) {
    if (line.empty()) {
      in_table = true;
      continue;
    }
    const auto cells = split_tabs(line);
    if (!in_table && cells.size() == 2) {
      report.add(std::string(cells[0]), parse_value(cells[1]));
      continue;
    }
    in_table = true;
    if (report.columns.empty()) {
      for (auto c : cells) report.columns.emplace_back(c);
    } else {
      std::vector<ReportValue> row;
      for (auto c : cells) row.push_back(parse_value(c));
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace goodturing
