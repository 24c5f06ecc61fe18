#include "goodturing/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace goodturing {

namespace {

void check_n(int n) {
  if (n < 1 || n > kOracleMaxN) {
    throw std::out_of_range("oracle enumeration needs 1 <= n <= " + std::to_string(kOracleMaxN) +
                            ", got " + std::to_string(n));
  }
}

// (x)_m as a plain product.
double rising(double x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= x + i;
  return r;
}

double falling(double c, int r) {
  double out = 1.0;
  for (int i = 0; i < r; ++i) out *= c - i;
  return out;
}

template <typename Visit>
void for_each_partition(int n, Visit visit) {
  check_n(n);
  SetPartitionEnumerator e(n);
  do {
    visit(e);
  } while (e.next());
}

}  // namespace

SetPartitionEnumerator::SetPartitionEnumerator(int n)
    : n_(n), rgs_(static_cast<std::size_t>(n), 0), prefix_max_(static_cast<std::size_t>(n), 0) {
  check_n(n);
}

bool SetPartitionEnumerator::next() {
  for (int i = n_ - 1; i >= 1; --i) {
    if (rgs_[i] <= prefix_max_[i - 1]) {
      ++rgs_[i];
      prefix_max_[i] = std::max(prefix_max_[i - 1], rgs_[i]);
      for (int j = i + 1; j < n_; ++j) {
        rgs_[j] = 0;
        prefix_max_[j] = prefix_max_[i];
      }
      blocks_ = prefix_max_[n_ - 1] + 1;
      return true;
    }
  }
  return false;
}

Composition SetPartitionEnumerator::composition() const {
  std::vector<int> sizes(static_cast<std::size_t>(blocks_), 0);
  for (int b : rgs_) ++sizes[b];
  return Composition(std::move(sizes));
}

std::vector<int> SetPartitionEnumerator::block_sizes() const {
  const Composition comp = composition();
  std::vector<int> sizes(comp.parts().begin(), comp.parts().end());
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

std::uint64_t bell_number(int n) {
  if (n < 0 || n > 25) throw std::out_of_range("bell_number: n out of range");
  std::vector<std::uint64_t> row{1};
  for (int i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next{row.back()};
    for (std::uint64_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::uint64_t count_partitions(int n) {
  std::uint64_t count = 0;
  for_each_partition(n, [&](const SetPartitionEnumerator&) { ++count; });
  return count;
}

std::map<std::vector<int>, std::uint64_t> partition_count_by_composition(int n) {
  std::map<std::vector<int>, std::uint64_t> out;
  for_each_partition(n, [&](const SetPartitionEnumerator& e) {
    const Composition comp = e.composition();
    ++out[std::vector<int>(comp.parts().begin(), comp.parts().end())];
  });
  return out;
}

OracleTally oracle_tally(const GibbsModel& model, int n) {
  check_n(n);
  const double a = model.alpha();
  std::vector<double> weights(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) weights[k] = model.weight(n, k).to_double();
  std::vector<double> block_factor(static_cast<std::size_t>(n) + 1);
  for (int m = 1; m <= n; ++m) block_factor[m] = rising(1.0 - a, m - 1);

  OracleTally t;
  t.n = n;
  t.expected_cl.assign(static_cast<std::size_t>(n), 0.0);
  t.falling.assign(3, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  std::vector<int> of_size(static_cast<std::size_t>(n) + 1);

  for_each_partition(n, [&](const SetPartitionEnumerator& e) {
    const Composition comp = e.composition();
    double p = weights[comp.k()];
    std::fill(of_size.begin(), of_size.end(), 0);
    for (int part : comp.parts()) {
      p *= block_factor[part];
      ++of_size[part];
    }
    t.eppf_total += p;
    t.expected_k += p * comp.k();
    for (int l = 1; l <= n; ++l) {
      if (of_size[l] == 0) continue;
      t.expected_cl[l - 1] += p * of_size[l];
      for (int r = 1; r <= 3; ++r) t.falling[r - 1][l - 1] += p * falling(of_size[l], r);
    }
  });
  return t;
}

double oracle_eppf_total(const GibbsModel& model, int n) { return oracle_tally(model, n).eppf_total; }

std::vector<double> oracle_stirling_row(int n, double alpha) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  for_each_partition(n, [&](const SetPartitionEnumerator& e) {
    double prod = 1.0;
    const Composition comp = e.composition();
    for (int part : comp.parts()) prod *= rising(1.0 - alpha, part - 1);
    row[e.blocks()] += prod;
  });
  return row;
}

double oracle_stirling(int n, int k, double alpha) {
  if (k < 0 || k > n) return 0.0;
  return oracle_stirling_row(n, alpha)[k];
}

double oracle_expected_cl(const GibbsModel& model, int l, int n) {
  if (l < 1 || l > n) throw std::out_of_range("oracle_expected_cl: need 1 <= l <= n");
  return oracle_tally(model, n).expected_cl[l - 1];
}

double oracle_falling_moment(const GibbsModel& model, int l, int n, int r) {
  if (l < 1 || l > n) throw std::out_of_range("oracle_falling_moment: need 1 <= l <= n");
  if (r < 1 || r > 3) throw std::out_of_range("oracle_falling_moment: need 1 <= r <= 3");
  return oracle_tally(model, n).falling[r - 1][l - 1];
}

double oracle_expected_k(const GibbsModel& model, int n) { return oracle_tally(model, n).expected_k; }

double oracle_exact_gt(const GibbsModel& model, int l, int n) {
  if (n + 1 > kOracleMaxN) throw std::out_of_range("oracle_exact_gt needs n + 1 <= 12");
  if (l < 1 || l > n) throw std::out_of_range("oracle_exact_gt: need 1 <= l <= n");
  const OracleTally here = oracle_tally(model, n);
  const OracleTally next = oracle_tally(model, n + 1);
  return (l + 1.0) / (n + 1.0) * next.expected_cl[l] / here.expected_cl[l - 1];
}

}  // namespace goodturing
