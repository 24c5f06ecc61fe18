#include "goodturing/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace goodturing {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_sample_size(const GibbsModel& model, int n) {
  if (n < 1 || n > model.max_n()) {
    throw std::out_of_range("sample size " + std::to_string(n) + " outside model range [1, " +
                            std::to_string(model.max_n()) + "]");
  }
}

void check_l(int l, int n) {
  if (l < 1 || l > n) {
    throw std::out_of_range("need 1 <= l <= n, got l=" + std::to_string(l) +
                            " n=" + std::to_string(n));
  }
}

std::span<const double> triangle_row(const GibbsModel& model, const StirlingTriangle& tri, int m) {
  if (tri.alpha() != model.alpha()) {
    throw std::invalid_argument("Stirling triangle alpha does not match the model");
  }
  return tri.log_row(m);
}

// log sum_{j=0}^{m} V_{n_weight, j+shift} S_{m,j}, where row holds log S_{m,.}.
double log_weighted_stirling_sum(const GibbsModel& model, int n_weight,
                                 std::span<const double> row, int shift) {
  LogSumAccumulator acc;
  for (std::size_t j = 0; j < row.size(); ++j) {
    if (row[j] == kNegInf) continue;
    acc.add(model.weight(n_weight, static_cast<int>(j) + shift).log() + row[j]);
  }
  return acc.result();
}

double log_rising(double x, int m) { return rising_factorial(x, m).log(); }

double expected_cl_from_row(const GibbsModel& model, std::span<const double> row, int l, int n) {
  const double a = model.alpha();
  return std::exp(log_binomial(n, l) + log_rising(1.0 - a, l - 1) +
                  log_weighted_stirling_sum(model, n, row, 1));
}

double falling_moment_from_row(const GibbsModel& model, std::span<const double> row, int l, int n,
                               int r) {
  const double a = model.alpha();
  const double log_coef = log_factorial(n) + r * (log_rising(1.0 - a, l - 1) - log_factorial(l)) -
                          log_factorial(n - l * r);
  return std::exp(log_coef + log_weighted_stirling_sum(model, n, row, r));
}

double exact_gt_from_row(const GibbsModel& model, std::span<const double> row, int l, int n) {
  const double num = log_weighted_stirling_sum(model, n + 1, row, 1);
  const double den = log_weighted_stirling_sum(model, n, row, 1);
  return (l - model.alpha()) * std::exp(num - den);
}

}  // namespace

TabulatedGibbsModel::TabulatedGibbsModel(double alpha, std::vector<std::vector<double>> log_rows,
                                         bool)
    : alpha_(alpha), log_rows_(std::move(log_rows)) {}

TabulatedGibbsModel::TabulatedGibbsModel(double alpha, const std::vector<std::vector<double>>& rows)
    : alpha_(alpha) {
  if (!(alpha < 1.0)) throw std::invalid_argument("Gibbs model needs alpha < 1");
  if (rows.empty()) throw std::invalid_argument("Gibbs weight table is empty");
  log_rows_.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != i + 1) {
      throw std::invalid_argument("Gibbs weight table row " + std::to_string(i + 1) +
                                  " must have " + std::to_string(i + 1) + " entries");
    }
    std::vector<double> logs;
    logs.reserve(rows[i].size());
    for (double v : rows[i]) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("Gibbs weights must be finite and nonnegative");
      }
      logs.push_back(v == 0.0 ? kNegInf : std::log(v));
    }
    log_rows_.push_back(std::move(logs));
  }
  if (std::fabs(rows[0][0] - 1.0) > 1e-12) throw std::invalid_argument("Gibbs weights need V(1,1) = 1");
  const double residual = max_recursion_residual(*this, max_n() - 1);
  if (residual > 1e-9) {
    throw std::invalid_argument("Gibbs weights violate the backward recursion (relative residual " +
                                std::to_string(residual) + ")");
  }
}

TabulatedGibbsModel TabulatedGibbsModel::from_terminal_row(double alpha,
                                                           std::span<const double> terminal) {
  if (!(alpha < 1.0)) throw std::invalid_argument("Gibbs model needs alpha < 1");
  const int n_max = static_cast<int>(terminal.size());
  if (n_max < 1) throw std::invalid_argument("terminal row is empty");
  std::vector<std::vector<double>> logs(static_cast<std::size_t>(n_max));
  auto& last = logs.back();
  for (double v : terminal) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument("terminal weights must be positive");
    last.push_back(std::log(v));
  }
  for (int n = n_max - 1; n >= 1; --n) {
    const auto& next = logs[static_cast<std::size_t>(n)];
    auto& row = logs[static_cast<std::size_t>(n - 1)];
    row.resize(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
      row[k - 1] = log_add_exp(std::log(n - k * alpha) + next[k - 1], next[k]);
    }
  }
  const double shift = logs[0][0];
  for (auto& row : logs) {
    for (double& v : row) v -= shift;
  }
  return TabulatedGibbsModel(alpha, std::move(logs), true);
}

SignedLog TabulatedGibbsModel::weight(int n, int k) const {
  check_sample_size(*this, n);
  if (k < 1 || k > n) throw std::out_of_range("weight: need 1 <= k <= n");
  return SignedLog::from_log(log_rows_[n - 1][k - 1]);
}

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("composition must have at least one part");
  for (int p : parts_) {
    if (p < 1) throw std::invalid_argument("composition parts must be >= 1");
    n_ += p;
  }
}

double max_recursion_residual(const GibbsModel& model, int n_max) {
  const double a = model.alpha();
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      const SignedLog lhs = model.weight(n, k);
      const SignedLog rhs =
          SignedLog::from_double(n - k * a) * model.weight(n + 1, k) + model.weight(n + 1, k + 1);
      if (lhs.is_zero()) {
        if (!rhs.is_zero()) worst = std::max(worst, std::numeric_limits<double>::infinity());
        continue;
      }
      worst = std::max(worst, std::fabs(((lhs - rhs) / lhs).to_double()));
    }
  }
  return worst;
}

double eppf(const GibbsModel& model, const Composition& comp) {
  check_sample_size(model, comp.n());
  SignedLog p = model.weight(comp.n(), comp.k());
  for (int part : comp.parts()) p *= rising_factorial(1.0 - model.alpha(), part - 1);
  return p.to_double();
}

double predict_old(const GibbsModel& model, int n, int k, int n_j) {
  check_sample_size(model, n + 1);
  if (k < 1 || k > n) throw std::out_of_range("predict_old: need 1 <= k <= n");
  if (n_j < 1 || n_j > n) throw std::out_of_range("predict_old: need 1 <= n_j <= n");
  const SignedLog ratio = model.weight(n + 1, k) / model.weight(n, k);
  return (n_j - model.alpha()) * ratio.to_double();
}

double predict_new(const GibbsModel& model, int n, int k) {
  check_sample_size(model, n + 1);
  if (k < 1 || k > n) throw std::out_of_range("predict_new: need 1 <= k <= n");
  return (model.weight(n + 1, k + 1) / model.weight(n, k)).to_double();
}

double expected_cl(const GibbsModel& model, int l, int n) {
  check_sample_size(model, n);
  check_l(l, n);
  return expected_cl_from_row(model, stirling_row(n - l, model.alpha()), l, n);
}

double expected_cl(const GibbsModel& model, const StirlingTriangle& tri, int l, int n) {
  check_sample_size(model, n);
  check_l(l, n);
  return expected_cl_from_row(model, triangle_row(model, tri, n - l), l, n);
}

double falling_factorial_moment_cl(const GibbsModel& model, int l, int n, int r) {
  check_sample_size(model, n);
  check_l(l, n);
  if (r < 1) throw std::out_of_range("falling factorial moment: need r >= 1");
  if (static_cast<long long>(l) * r > n) return 0.0;
  return falling_moment_from_row(model, stirling_row(n - l * r, model.alpha()), l, n, r);
}

double falling_factorial_moment_cl(const GibbsModel& model, const StirlingTriangle& tri, int l,
                                   int n, int r) {
  check_sample_size(model, n);
  check_l(l, n);
  if (r < 1) throw std::out_of_range("falling factorial moment: need r >= 1");
  if (static_cast<long long>(l) * r > n) return 0.0;
  return falling_moment_from_row(model, triangle_row(model, tri, n - l * r), l, n, r);
}

double expected_k(const GibbsModel& model, int n) {
  check_sample_size(model, n);
  // Rows 0..n-1 are visited in order, which is l = n down to 1.
  std::vector<double> row{0.0};
  row.reserve(static_cast<std::size_t>(n) + 1);
  double total = 0.0;
  for (int m = 0; m < n; ++m) {
    if (m > 0) advance_stirling_row(row, model.alpha());
    total += expected_cl_from_row(model, row, n - m, n);
  }
  return total;
}

double expected_k(const GibbsModel& model, const StirlingTriangle& tri, int n) {
  check_sample_size(model, n);
  double total = 0.0;
  for (int l = n; l >= 1; --l) total += expected_cl_from_row(model, triangle_row(model, tri, n - l), l, n);
  return total;
}

double exact_gt(const GibbsModel& model, int l, int n) {
  check_sample_size(model, n + 1);
  check_l(l, n);
  return exact_gt_from_row(model, stirling_row(n - l, model.alpha()), l, n);
}

double exact_gt(const GibbsModel& model, const StirlingTriangle& tri, int l, int n) {
  check_sample_size(model, n + 1);
  check_l(l, n);
  return exact_gt_from_row(model, triangle_row(model, tri, n - l), l, n);
}

}  // namespace goodturing
