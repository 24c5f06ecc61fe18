#ifndef GOODTURING_GIBBS_HPP
#define GOODTURING_GIBBS_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "goodturing/signed_log.hpp"
#include "goodturing/specfun.hpp"

namespace goodturing {

// A Gibbs-type species sampling model: a discount alpha < 1 together with
// weights V_{n,k} such that V_{1,1} = 1 and
//
//   V_{n,k} = (n - k alpha) V_{n+1,k} + V_{n+1,k+1}.
//
// The EPPF is V_{n,k} prod_j (1-alpha)_{n_j-1}. Implementations must be
// immutable; every function below only reads them.
class GibbsModel {
 public:
  virtual ~GibbsModel() = default;

  virtual double alpha() const = 0;
  // Largest sample size n for which weight(n, k) is available.
  virtual int max_n() const = 0;
  // V_{n,k} for 1 <= k <= n <= max_n(). May be zero for models with a
  // finite number of species.
  virtual SignedLog weight(int n, int k) const = 0;
};

// Weights given as a table, rows n = 1..N. Validated at construction:
// nonnegative entries, V_{1,1} = 1 and the backward recursion holding to
// relative error 1e-9.
class TabulatedGibbsModel final : public GibbsModel {
 public:
  // rows[n-1][k-1] = V_{n,k}.
  TabulatedGibbsModel(double alpha, const std::vector<std::vector<double>>& rows);

  // Builds every row from a positive terminal row V_{N,1..N} by running the
  // recursion backward, then rescales so that V_{1,1} = 1. Any positive
  // terminal row gives a valid model on [1, N].
  static TabulatedGibbsModel from_terminal_row(double alpha, std::span<const double> terminal);

  double alpha() const override { return alpha_; }
  int max_n() const override { return static_cast<int>(log_rows_.size()); }
  SignedLog weight(int n, int k) const override;

 private:
  TabulatedGibbsModel(double alpha, std::vector<std::vector<double>> log_rows, bool);

  double alpha_;
  std::vector<std::vector<double>> log_rows_;
};

// Multiplicities (n_1, ..., n_k) of species in order of first appearance.
class Composition {
 public:
  Composition() = default;
  explicit Composition(std::vector<int> parts);
  Composition(std::initializer_list<int> parts) : Composition(std::vector<int>(parts)) {}

  std::span<const int> parts() const { return parts_; }
  int part(int j) const { return parts_.at(static_cast<std::size_t>(j)); }
  int n() const { return n_; }
  int k() const { return static_cast<int>(parts_.size()); }

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

// Largest relative residual of the backward recursion over 1 <= k <= n <= n_max.
double max_recursion_residual(const GibbsModel& model, int n_max);

double eppf(const GibbsModel& model, const Composition& comp);

// Probability that draw n+1 joins an existing species of size n_j.
double predict_old(const GibbsModel& model, int n, int k, int n_j);
// Probability that draw n+1 is a new species.
double predict_new(const GibbsModel& model, int n, int k);

// The overloads taking a StirlingTriangle read Stirling rows from it; it
// must share the model's alpha and cover the rows needed. The others
// stream the single row they need, in O(n) memory.

// E[C_{l,n}], expected number of species seen exactly l times.
double expected_cl(const GibbsModel& model, int l, int n);
double expected_cl(const GibbsModel& model, const StirlingTriangle& tri, int l, int n);

// E[(C_{l,n})_{[r]}], the r-th falling factorial moment. Zero when l r > n.
double falling_factorial_moment_cl(const GibbsModel& model, int l, int n, int r);
double falling_factorial_moment_cl(const GibbsModel& model, const StirlingTriangle& tri, int l,
                                   int n, int r);

// E[K_n] = sum_l E[C_{l,n}].
double expected_k(const GibbsModel& model, int n);
double expected_k(const GibbsModel& model, const StirlingTriangle& tri, int n);

// Exact Good-Turing estimate of the probability that the next draw is a
// species seen l times, conditioning only on that species' count:
//
//   (l - alpha) sum_k V_{n+1,k} S_{n-l,k-1} / sum_k V_{n,k} S_{n-l,k-1}.
//
// Needs weights up to n+1.
double exact_gt(const GibbsModel& model, int l, int n);
double exact_gt(const GibbsModel& model, const StirlingTriangle& tri, int l, int n);

}  // namespace goodturing

#endif  // GOODTURING_GIBBS_HPP
