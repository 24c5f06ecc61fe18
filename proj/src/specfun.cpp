#include "goodturing/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace goodturing {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::size_t row_offset(int n) {
  return static_cast<std::size_t>(n) * (static_cast<std::size_t>(n) + 1) / 2;
}

void check_alpha(double alpha) {
  if (!(alpha < 1.0)) {
    throw std::invalid_argument("Stirling numbers S^{-1,-alpha} need alpha < 1, got " +
                                std::to_string(alpha));
  }
}

}  // namespace

SignedLog rising_factorial(double x, int m) { return rising_factorial_step(x, m, 1.0); }

SignedLog rising_factorial_step(double x, int m, double step) {
  if (m < 0) throw std::invalid_argument("rising factorial: negative length");
  double logmag = 0.0;
  int sign = 1;
  for (int i = 0; i < m; ++i) {
    const double f = x + i * step;
    if (f == 0.0) return SignedLog::zero();
    if (f < 0) sign = -sign;
    logmag += std::log(std::fabs(f));
  }
  return SignedLog::from_log(logmag, sign);
}

double log_factorial(int n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(n + 1.0);
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) throw std::out_of_range("log_binomial: need 0 <= k <= n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

void advance_stirling_row(std::vector<double>& row, double alpha) {
  const int n = static_cast<int>(row.size()) - 1;
  row.push_back(kNegInf);
  // Walk k downward so row[k-1] still holds the old value when read.
  for (int k = n + 1; k >= 1; --k) {
    const double from_new_block = row[k - 1];
    const double from_join = (k <= n) ? std::log(n - k * alpha) + row[k] : kNegInf;
    row[k] = log_add_exp(from_new_block, from_join);
  }
  row[0] = kNegInf;
}

std::vector<double> stirling_row(int n, double alpha) {
  check_alpha(alpha);
  if (n < 0) throw std::invalid_argument("stirling_row: negative n");
  std::vector<double> row{0.0};
  row.reserve(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m < n; ++m) advance_stirling_row(row, alpha);
  return row;
}

StirlingTriangle::StirlingTriangle(int n_max, double alpha) : n_max_(n_max), alpha_(alpha) {
  check_alpha(alpha);
  if (n_max < 1) throw std::invalid_argument("StirlingTriangle: n_max must be >= 1");
  logs_.resize(row_offset(n_max + 1), kNegInf);
  logs_[0] = 0.0;
  for (int n = 0; n < n_max; ++n) {
    const double* prev = &logs_[row_offset(n)];
    double* next = &logs_[row_offset(n + 1)];
    for (int k = 1; k <= n + 1; ++k) {
      const double from_join = (k <= n) ? std::log(n - k * alpha) + prev[k] : kNegInf;
      next[k] = log_add_exp(prev[k - 1], from_join);
    }
  }
}

SignedLog StirlingTriangle::entry(int n, int k) const {
  if (n < 0 || n > n_max_) throw std::out_of_range("StirlingTriangle: row out of range");
  if (k < 0 || k > n) return SignedLog::zero();
  return SignedLog::from_log(logs_[row_offset(n) + k]);
}

std::span<const double> StirlingTriangle::log_row(int n) const {
  if (n < 0 || n > n_max_) throw std::out_of_range("StirlingTriangle: row out of range");
  return {logs_.data() + row_offset(n), static_cast<std::size_t>(n) + 1};
}

}  // namespace goodturing
