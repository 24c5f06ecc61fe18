#ifndef GOODTURING_SPECFUN_HPP
#define GOODTURING_SPECFUN_HPP

#include <span>
#include <vector>

#include "goodturing/signed_log.hpp"

namespace goodturing {

// (x)_m = x(x+1)...(x+m-1); (x)_0 = 1.
SignedLog rising_factorial(double x, int m);

// (x)_{m|step} = x(x+step)...(x+(m-1)step); (x)_{0|step} = 1.
SignedLog rising_factorial_step(double x, int m, double step);

// log C(n, k) for 0 <= k <= n.
double log_binomial(int n, int k);

// log n!
double log_factorial(int n);

// Generalized Stirling numbers S^{-1,-alpha}_{n,k}: the sum over set
// partitions of [n] into k blocks of prod_j (1-alpha)_{|B_j|-1}. Filled by
//
//   S_{n+1,k} = S_{n,k-1} + (n - k alpha) S_{n,k},
//
// with S_{0,0} = 1, S_{n,0} = 0 for n >= 1 and S_{n,k} = 0 for k > n. Every
// entry with 1 <= k <= n is positive when alpha < 1, so entries are stored
// as plain logs (-inf for the zero entries).
//
// Memory is O(n_max^2). For one row of a large n use stirling_row(), which
// streams the recurrence in O(n) memory.
class StirlingTriangle {
 public:
  StirlingTriangle(int n_max, double alpha);

  int n_max() const { return n_max_; }
  double alpha() const { return alpha_; }

  SignedLog entry(int n, int k) const;
  // Log entries of row n, indices k = 0..n.
  std::span<const double> log_row(int n) const;

 private:
  int n_max_;
  double alpha_;
  std::vector<double> logs_;  // row n starts at n(n+1)/2
};

// Log entries of row n (k = 0..n) without storing the triangle.
std::vector<double> stirling_row(int n, double alpha);

// Advances a row of log Stirling numbers from n to n+1 in place.
void advance_stirling_row(std::vector<double>& row, double alpha);

}  // namespace goodturing

#endif  // GOODTURING_SPECFUN_HPP
