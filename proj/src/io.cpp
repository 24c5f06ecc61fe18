#include "goodturing/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>

namespace goodturing {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_positive(std::string_view text, std::int64_t& out) {
  text = trim(text);
  auto [end, err] = std::from_chars(text.data(), text.data() + text.size(), out);
  return err == std::errc() && end == text.data() + text.size() && !text.empty() && out > 0;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

}  // namespace

FrequencyCounts parse_counts(std::istream& in, const std::string& source) {
  std::map<int, std::int64_t> counts;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError(source, line_no, "expected `l,c_l`");
    }
    std::int64_t l = 0, c = 0;
    if (!parse_positive(line.substr(0, comma), l) || l > 1'000'000'000) {
      throw ParseError(source, line_no, "l must be a positive integer");
    }
    if (!parse_positive(line.substr(comma + 1), c)) {
      throw ParseError(source, line_no, "c_l must be a positive integer");
    }
    if (!counts.emplace(static_cast<int>(l), c).second) {
      throw ParseError(source, line_no, "duplicate l = " + std::to_string(l));
    }
  }
  if (counts.empty()) throw ParseError(source, line_no, "no count records");
  return FrequencyCounts(std::move(counts));
}

FrequencyCounts read_counts_file(const std::string& path) {
  auto in = open(path);
  return parse_counts(in, path);
}

std::vector<std::string> parse_sample(std::istream& in, const std::string& source) {
  std::vector<std::string> labels;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto label = trim(raw);
    if (!label.empty()) labels.emplace_back(label);
  }
  if (labels.empty()) throw ParseError(source, line_no, "sample has no labels");
  return labels;
}

std::vector<std::string> read_sample_file(const std::string& path) {
  auto in = open(path);
  return parse_sample(in, path);
}

FinitePopulation parse_population(std::string_view text, std::vector<int>* dropped) {
  std::vector<double> probs;
  int position = 0;
  while (!text.empty()) {
    ++position;
    const auto comma = text.find(',');
    const std::string item(trim(text.substr(0, comma)));
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    char* end = nullptr;
    const double p = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size()) {
      throw std::invalid_argument("population entry " + std::to_string(position) + " is not a number");
    }
    if (p == 0.0) {
      if (dropped) dropped->push_back(position);
      continue;
    }
    probs.push_back(p);
  }
  return FinitePopulation(std::move(probs));
}

}  // namespace goodturing
