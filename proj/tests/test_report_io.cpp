#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "goodturing/io.hpp"
#include "goodturing/report.hpp"

using namespace goodturing;

namespace {

const std::string kData = GOODTURING_TEST_DATA;

int parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_counts(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("counts files") {
  const FrequencyCounts fc = read_counts_file(kData + "/counts.csv");
  CHECK(fc == FrequencyCounts({{1, 3}, {2, 2}}));
  try {
    read_counts_file(kData + "/bad_counts.csv");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(read_counts_file(kData + "/missing.csv"), ParseError);
}

TEST_CASE("counts parsing errors carry line numbers") {
  CHECK(parse_error_line("1,3\n\n2\n") == 3);
  CHECK(parse_error_line("# header\n1,3\n1,4\n") == 3);
  CHECK(parse_error_line("0,1\n") == 1);
  CHECK(parse_error_line("1,-2\n") == 1);
  CHECK(parse_error_line("1,2,3\n") == 1);
  CHECK(parse_error_line("# nothing\n\n") == 2);
  CHECK(parse_error_line(" 4 , 1 \r\n") == -1);
}

TEST_CASE("sample files") {
  const auto labels = read_sample_file(kData + "/sample.txt");
  CHECK(labels == std::vector<std::string>{"a", "b", "a", "c"});
  std::istringstream blank("\n  \n");
  CHECK_THROWS_AS(parse_sample(blank), ParseError);
}

TEST_CASE("population strings") {
  std::vector<int> dropped;
  const FinitePopulation pop = parse_population("0.5, 0, 0.3,0.2", &dropped);
  CHECK(pop.s() == 3);
  CHECK(dropped == std::vector<int>{2});
  CHECK_THROWS(parse_population("0.5,abc"));
  CHECK_THROWS(parse_population("0.5,0.6"));
  CHECK_THROWS(parse_population("0.5,-0.5,1.0"));
}

TEST_CASE("report values round-trip") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> expo(-300.0, 300.0), sign(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::copysign(std::pow(10.0, expo(rng)), sign(rng));
    const ReportValue back = parse_value(format_value(x));
    REQUIRE(std::holds_alternative<double>(back));
    CHECK(std::get<double>(back) == x);
  }
  for (std::int64_t v : {std::int64_t{0}, std::int64_t{-7}, std::numeric_limits<std::int64_t>::max()}) {
    CHECK(std::get<std::int64_t>(parse_value(format_value(v))) == v);
  }
  CHECK(std::get<std::string>(parse_value("gt_ratio")) == "gt_ratio");
  CHECK(format_value(1.0 / 3, true) == "0.333333");
}

TEST_CASE("reports round-trip") {
  Report r;
  r.add("estimator", "exact_gt").add("n", std::int64_t{10}).add("value", 0.1 + 0.2);
  r.columns = {"statistic", "l", "mc_mean"};
  r.rows.push_back({"K", std::int64_t{0}, 2.5});
  r.rows.push_back({"C", std::int64_t{1}, 1.0 / 7});
  const std::string text = format_report(r);
  const Report back = parse_report(text);
  CHECK(back.fields == r.fields);
  CHECK(back.columns == r.columns);
  CHECK(back.rows == r.rows);
  CHECK(back.number("value") == 0.1 + 0.2);
  CHECK(back.number("n") == 10.0);
  CHECK(format_report(back) == text);
  CHECK(back.find("absent") == nullptr);
}
