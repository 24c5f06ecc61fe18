#ifndef GOODTURING_IO_HPP
#define GOODTURING_IO_HPP

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "goodturing/empirical.hpp"

namespace goodturing {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

// Counts table: one `l,c_l` record per line, positive integers, distinct l.
// `#` starts a comment; blank lines are skipped.
FrequencyCounts parse_counts(std::istream& in, const std::string& source = "<counts>");
FrequencyCounts read_counts_file(const std::string& path);

// One species label per line; surrounding whitespace is trimmed and blank
// lines are skipped.
std::vector<std::string> parse_sample(std::istream& in, const std::string& source = "<sample>");
std::vector<std::string> read_sample_file(const std::string& path);

// Comma-separated frequencies. Zero entries are dropped and reported in
// `dropped` (1-based positions).
FinitePopulation parse_population(std::string_view text, std::vector<int>* dropped = nullptr);

}  // namespace goodturing

#endif  // GOODTURING_IO_HPP
