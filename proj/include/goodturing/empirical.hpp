#ifndef GOODTURING_EMPIRICAL_HPP
#define GOODTURING_EMPIRICAL_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace goodturing {

// Frequencies of frequencies: l -> c_l, the number of species seen exactly
// l times. Absent keys mean zero; stored counts are >= 1.
class FrequencyCounts {
 public:
  FrequencyCounts() = default;
  explicit FrequencyCounts(std::map<int, std::int64_t> counts);

  // c_l, zero when absent.
  std::int64_t count(int l) const;
  const std::map<int, std::int64_t>& counts() const { return counts_; }
  std::int64_t n() const { return n_; }
  std::int64_t k() const { return k_; }
  bool empty() const { return counts_.empty(); }

  friend bool operator==(const FrequencyCounts&, const FrequencyCounts&) = default;

 private:
  std::map<int, std::int64_t> counts_;
  std::int64_t n_ = 0;
  std::int64_t k_ = 0;
};

// Fixed population frequencies p_1..p_s, each > 0, summing to 1.
class FinitePopulation {
 public:
  explicit FinitePopulation(std::vector<double> probs);

  std::span<const double> probs() const { return probs_; }
  int s() const { return static_cast<int>(probs_.size()); }

 private:
  std::vector<double> probs_;
};

// Raised by gt_ratio when no species was seen l times.
class UndefinedEstimate : public std::domain_error {
 public:
  UndefinedEstimate(int l)
      : std::domain_error("no species observed " + std::to_string(l) +
                          " times (c_" + std::to_string(l) + " = 0); the ratio estimate is undefined"),
        l_(l) {}
  int l() const { return l_; }

 private:
  int l_;
};

FrequencyCounts counts_from_sample(std::span<const std::string> labels);

// (l+1) c_{l+1} / n. l = 0 gives the missing-mass estimate c_1 / n.
double gt_approx(const FrequencyCounts& fc, int l);

// (l+1) c_{l+1} / (n c_l). Throws UndefinedEstimate when c_l = 0.
double gt_ratio(const FrequencyCounts& fc, int l);

// c'_l = alpha (1-alpha)_{l-1} / l! * k_n.
double smoothed_count(double alpha, std::int64_t k_n, int l);

// (k_n / n) alpha (1-alpha)_l / l!, the discovery estimate after smoothing.
double smoothed_discovery(double alpha, std::int64_t k_n, std::int64_t n, int l);

// E[K_n] = s - sum_j (1-p_j)^n.
double pop_expected_k(const FinitePopulation& pop, int n);

// E[C_{l,n}] = sum_j C(n,l) p_j^l (1-p_j)^{n-l}.
double pop_expected_cl(const FinitePopulation& pop, int l, int n);

// Posterior over which species (by index) has frequency Q_l, given that it
// was seen l times in n draws.
std::vector<double> pop_posterior(const FinitePopulation& pop, int l, int n);

// sum_j p_j^{l+1}(1-p_j)^{n-l} / sum_j p_j^l (1-p_j)^{n-l}.
double pop_exact_gt(const FinitePopulation& pop, int l, int n);

}  // namespace goodturing

#endif  // GOODTURING_EMPIRICAL_HPP
