#include "goodturing/pitman_yor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "goodturing/specfun.hpp"

namespace goodturing {

namespace {

constexpr double kGuard = 1e-12;

void check_l(int l, int n) {
  if (n < 1 || l < 1 || l > n) {
    throw std::out_of_range("need 1 <= l <= n, got l=" + std::to_string(l) +
                            " n=" + std::to_string(n));
  }
}

void require_beta_regime(const PYParams& p) {
  if (p.alpha() < 0.0) {
    throw std::domain_error("structural beta law is only available for alpha in [0, 1)");
  }
}

}  // namespace

PYParams::PYParams(double alpha, double theta, std::optional<int> s)
    : alpha_(alpha), theta_(theta), s_(s) {
  if (!std::isfinite(alpha) || !std::isfinite(theta)) {
    throw std::invalid_argument("PD parameters must be finite");
  }
  if (alpha >= 1.0) throw std::invalid_argument("PD needs alpha < 1");
  if (alpha >= 0.0) {
    if (s) throw std::invalid_argument("PD: s only applies when alpha < 0");
    if (!(theta + alpha > kGuard)) throw std::invalid_argument("PD needs theta > -alpha");
    return;
  }
  if (!s || *s < 1) throw std::invalid_argument("PD with alpha < 0 needs a positive integer s");
  const double expected = -alpha * *s;
  if (std::fabs(theta - expected) > kGuard * std::max(1.0, expected)) {
    throw std::invalid_argument("PD with alpha < 0 needs theta = |alpha| s = " +
                                std::to_string(expected));
  }
}

PYParams PYParams::finite(double alpha, int s) { return PYParams(alpha, -alpha * s, s); }

PitmanYorModel::PitmanYorModel(PYParams params, int capacity)
    : params_(params), capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("PitmanYorModel: capacity must be >= 1");
  const double a = params_.alpha(), t = params_.theta();
  numer_.reserve(static_cast<std::size_t>(capacity));
  log_denom_.reserve(static_cast<std::size_t>(capacity));
  SignedLog numer = SignedLog::one();
  double log_denom = 0.0;
  for (int i = 0; i < capacity; ++i) {
    numer_.push_back(numer);
    log_denom_.push_back(log_denom);
    numer *= SignedLog::from_double(t + a + i * a);
    log_denom += std::log(t + 1.0 + i);
  }
}

SignedLog PitmanYorModel::weight(int n, int k) const {
  if (n < 1 || n > capacity_) {
    throw std::out_of_range("sample size " + std::to_string(n) + " outside model range [1, " +
                            std::to_string(capacity_) + "]");
  }
  if (k < 1 || k > n) throw std::out_of_range("weight: need 1 <= k <= n");
  return numer_[k - 1] / SignedLog::from_log(log_denom_[n - 1]);
}

SignedLog py_weight(const PYParams& params, int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::out_of_range("py_weight: need 1 <= k <= n");
  if (params.s() && k > *params.s()) {
    throw std::out_of_range("py_weight: k exceeds the number of species s");
  }
  const double a = params.alpha(), t = params.theta();
  return rising_factorial_step(t + a, k - 1, a) / rising_factorial(t + 1.0, n - 1);
}

double py_exact_gt(const PYParams& params, int l, int n) {
  check_l(l, n);
  return (l - params.alpha()) / (params.theta() + n);
}

double py_bnp_predict(const PYParams& params, const Composition& comp, int j) {
  if (j < 1 || j > comp.k()) throw std::out_of_range("py_bnp_predict: species index out of range");
  return py_exact_gt(params, comp.part(j - 1), comp.n());
}

double py_predict_new(const PYParams& params, int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::out_of_range("py_predict_new: need 1 <= k <= n");
  return (params.theta() + k * params.alpha()) / (params.theta() + n);
}

double py_predict_old(const PYParams& params, int n, int n_j) {
  if (n_j < 1 || n_j > n) throw std::out_of_range("py_predict_old: need 1 <= n_j <= n");
  return (n_j - params.alpha()) / (params.theta() + n);
}

double johnson_estimate(double abs_alpha, int s, int l, int n) {
  if (!(abs_alpha > 0.0)) throw std::invalid_argument("johnson_estimate: |alpha| must be positive");
  if (s < 1) throw std::invalid_argument("johnson_estimate: s must be positive");
  check_l(l, n);
  return (l + abs_alpha) / (n + abs_alpha * s);
}

double jeffreys_estimate(int s, int l, int n) { return johnson_estimate(1.0, s, l, n); }

double structural_density(const PYParams& params, double x) {
  require_beta_regime(params);
  if (!(x > 0.0 && x < 1.0)) throw std::out_of_range("structural_density: x must lie in (0, 1)");
  const double a = 1.0 - params.alpha();
  const double b = params.theta() + params.alpha();
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta);
}

double expected_k_structural(const PYParams& params, int n) {
  require_beta_regime(params);
  if (n < 1) throw std::out_of_range("expected_k_structural: n must be >= 1");
  const double b = params.theta() + params.alpha();
  const double c = params.theta() + 1.0;
  // E[(1-P)^i] = (b)_i / (c)_i; terms decrease since b < c.
  double term = 1.0;
  double total = 0.0;
  double carry = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i > 0) term *= (b + i - 1) / (c + i - 1);
    const double y = term - carry;
    const double t = total + y;
    carry = (t - total) - y;
    total = t;
  }
  return total;
}

}  // namespace goodturing
