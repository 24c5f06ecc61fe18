#ifndef GOODTURING_ORACLE_HPP
#define GOODTURING_ORACLE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "goodturing/gibbs.hpp"

namespace goodturing {

// Brute-force ground truth by enumerating every set partition of [n].
// Nothing here touches the Stirling recurrence or the closed-form sums;
// rising factorials are plain double products.

inline constexpr int kOracleMaxN = 12;

// Streams the set partitions of [n] as restricted growth strings in
// lexicographic order: a[0] = 0 and a[i] <= 1 + max(a[0..i-1]). Element i
// lies in block a[i]; blocks are numbered by least element.
class SetPartitionEnumerator {
 public:
  explicit SetPartitionEnumerator(int n);

  // Advances to the next partition; false once all have been visited.
  // The enumerator starts on the first partition (all in one block).
  bool next();

  int n() const { return n_; }
  const std::vector<int>& rgs() const { return rgs_; }
  int blocks() const { return blocks_; }
  // Block sizes in order of least element.
  Composition composition() const;
  // Block sizes, ascending.
  std::vector<int> block_sizes() const;

 private:
  int n_;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
  int blocks_ = 1;
};

// Bell number B_n from the Bell triangle.
std::uint64_t bell_number(int n);

// Number of set partitions of [n] found by enumeration.
std::uint64_t count_partitions(int n);

// Number of set partitions of [n] whose blocks, in order of least element,
// have the given sizes.
std::map<std::vector<int>, std::uint64_t> partition_count_by_composition(int n);

// Everything the oracle derives from one enumeration pass at size n.
struct OracleTally {
  int n = 0;
  double eppf_total = 0.0;
  double expected_k = 0.0;
  std::vector<double> expected_cl;  // [l-1]
  // falling[r-1][l-1] = E[(C_{l,n})_{[r]}], r = 1..3.
  std::vector<std::vector<double>> falling;
};

OracleTally oracle_tally(const GibbsModel& model, int n);

double oracle_eppf_total(const GibbsModel& model, int n);
double oracle_stirling(int n, int k, double alpha);
// Entries k = 0..n of row n.
std::vector<double> oracle_stirling_row(int n, double alpha);
double oracle_expected_cl(const GibbsModel& model, int l, int n);
double oracle_falling_moment(const GibbsModel& model, int l, int n, int r);
double oracle_expected_k(const GibbsModel& model, int n);
// (l+1)/(n+1) E[C_{l+1,n+1}] / E[C_{l,n}] from tallies at n and n+1.
double oracle_exact_gt(const GibbsModel& model, int l, int n);

}  // namespace goodturing

#endif  // GOODTURING_ORACLE_HPP
