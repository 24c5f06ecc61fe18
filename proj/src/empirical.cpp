#include "goodturing/empirical.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

#include "goodturing/signed_log.hpp"
#include "goodturing/specfun.hpp"

namespace goodturing {

namespace {

void check_l(int l, int n) {
  if (n < 1 || l < 1 || l > n) {
    throw std::out_of_range("need 1 <= l <= n, got l=" + std::to_string(l) +
                            " n=" + std::to_string(n));
  }
}

// e * log(x) with the convention 0 * log(0) = 0.
double scaled_log(int e, double log_x) { return e == 0 ? 0.0 : e * log_x; }

// log of p^a (1-p)^b.
double log_beta_kernel(double p, int a, int b) {
  return scaled_log(a, std::log(p)) + scaled_log(b, std::log1p(-p));
}

// (1-alpha)_m / m! as a running product of (i - alpha) / i.
double rising_over_factorial(double alpha, int m) {
  double r = 1.0;
  for (int i = 1; i <= m; ++i) r *= (i - alpha) / i;
  return r;
}

void check_smoothing_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("smoothing needs alpha in (0, 1)");
}

}  // namespace

FrequencyCounts::FrequencyCounts(std::map<int, std::int64_t> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("frequency counts are empty");
  for (const auto& [l, c] : counts_) {
    if (l < 1) throw std::invalid_argument("frequency index l must be >= 1");
    if (c < 1) throw std::invalid_argument("stored counts c_l must be >= 1");
    n_ += static_cast<std::int64_t>(l) * c;
    k_ += c;
  }
}

std::int64_t FrequencyCounts::count(int l) const {
  auto it = counts_.find(l);
  return it == counts_.end() ? 0 : it->second;
}

FinitePopulation::FinitePopulation(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw std::invalid_argument("population is empty");
  double total = 0.0;
  for (double p : probs_) {
    if (!(p > 0.0) || !(p <= 1.0)) throw std::invalid_argument("population frequencies must lie in (0, 1]");
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("population frequencies must sum to 1");
  }
}

FrequencyCounts counts_from_sample(std::span<const std::string> labels) {
  if (labels.empty()) throw std::invalid_argument("sample is empty");
  std::unordered_map<std::string, int> occurrences;
  for (const auto& label : labels) ++occurrences[label];
  std::map<int, std::int64_t> counts;
  for (const auto& [label, times] : occurrences) ++counts[times];
  return FrequencyCounts(std::move(counts));
}

double gt_approx(const FrequencyCounts& fc, int l) {
  if (l < 0) throw std::out_of_range("gt_approx: l must be >= 0");
  const std::int64_t numer = static_cast<std::int64_t>(l + 1) * fc.count(l + 1);
  return static_cast<double>(numer) / static_cast<double>(fc.n());
}

double gt_ratio(const FrequencyCounts& fc, int l) {
  if (l < 1) throw std::out_of_range("gt_ratio: l must be >= 1");
  const std::int64_t c_l = fc.count(l);
  if (c_l == 0) throw UndefinedEstimate(l);
  const std::int64_t numer = static_cast<std::int64_t>(l + 1) * fc.count(l + 1);
  return static_cast<double>(numer) / (static_cast<double>(fc.n()) * static_cast<double>(c_l));
}

double smoothed_count(double alpha, std::int64_t k_n, int l) {
  check_smoothing_alpha(alpha);
  if (k_n < 1) throw std::invalid_argument("smoothed_count: k_n must be >= 1");
  if (l < 1) throw std::out_of_range("smoothed_count: l must be >= 1");
  // (1-alpha)_{l-1} / l! = (1/l) (1-alpha)_{l-1} / (l-1)!
  return alpha * rising_over_factorial(alpha, l - 1) / l * static_cast<double>(k_n);
}

double smoothed_discovery(double alpha, std::int64_t k_n, std::int64_t n, int l) {
  check_smoothing_alpha(alpha);
  if (k_n < 1 || n < k_n) throw std::invalid_argument("smoothed_discovery: need 1 <= k_n <= n");
  if (l < 0) throw std::out_of_range("smoothed_discovery: l must be >= 0");
  return static_cast<double>(k_n) / static_cast<double>(n) * alpha * rising_over_factorial(alpha, l);
}

double pop_expected_k(const FinitePopulation& pop, int n) {
  if (n < 1) throw std::out_of_range("pop_expected_k: n must be >= 1");
  double missing = 0.0;
  for (double p : pop.probs()) missing += std::exp(n * std::log1p(-p));
  return pop.s() - missing;
}

double pop_expected_cl(const FinitePopulation& pop, int l, int n) {
  check_l(l, n);
  const double log_choose = log_binomial(n, l);
  double total = 0.0;
  for (double p : pop.probs()) total += std::exp(log_choose + log_beta_kernel(p, l, n - l));
  return total;
}

std::vector<double> pop_posterior(const FinitePopulation& pop, int l, int n) {
  check_l(l, n);
  // Only a single-species population (p = 1) makes every kernel vanish for
  // l < n; the posterior is then the point mass on that species.
  if (pop.s() == 1) return {1.0};
  std::vector<double> logs;
  logs.reserve(pop.probs().size());
  for (double p : pop.probs()) logs.push_back(log_beta_kernel(p, l, n - l));
  const double log_norm = log_sum_exp(logs);
  std::vector<double> post;
  post.reserve(logs.size());
  for (double v : logs) post.push_back(std::exp(v - log_norm));
  return post;
}

double pop_exact_gt(const FinitePopulation& pop, int l, int n) {
  check_l(l, n);
  if (pop.s() == 1) return 1.0;
  LogSumAccumulator num, den;
  for (double p : pop.probs()) {
    num.add(log_beta_kernel(p, l + 1, n - l));
    den.add(log_beta_kernel(p, l, n - l));
  }
  return std::exp(num.result() - den.result());
}

}  // namespace goodturing
