#ifndef GOODTURING_PITMAN_YOR_HPP
#define GOODTURING_PITMAN_YOR_HPP

#include <optional>
#include <vector>

#include "goodturing/gibbs.hpp"
#include "goodturing/signed_log.hpp"

namespace goodturing {

// Two-parameter Poisson-Dirichlet PD(alpha, theta). Valid when either
// alpha in [0, 1) and theta > -alpha, or alpha < 0 and theta = |alpha| s for
// a positive integer s (symmetric Dirichlet on s species).
//
// Under PD(alpha, theta) with alpha in (0,1), this is Good's model H1 with
// his alpha* = -alpha - 1 and beta = theta + alpha - 1.
class PYParams {
 public:
  PYParams(double alpha, double theta, std::optional<int> s = std::nullopt);

  // alpha < 0 with theta = |alpha| s.
  static PYParams finite(double alpha, int s);

  double alpha() const { return alpha_; }
  double theta() const { return theta_; }
  std::optional<int> s() const { return s_; }

 private:
  double alpha_;
  double theta_;
  std::optional<int> s_;
};

// PD weights as a GibbsModel, backed by prefix tables up to capacity.
// For alpha < 0, weight(n, k) is zero once k exceeds s.
class PitmanYorModel final : public GibbsModel {
 public:
  static constexpr int kDefaultCapacity = 10001;

  explicit PitmanYorModel(PYParams params, int capacity = kDefaultCapacity);

  const PYParams& params() const { return params_; }
  double alpha() const override { return params_.alpha(); }
  int max_n() const override { return capacity_; }
  SignedLog weight(int n, int k) const override;

 private:
  PYParams params_;
  int capacity_;
  std::vector<SignedLog> numer_;  // numer_[k-1] = (theta+alpha)_{k-1|alpha}
  std::vector<double> log_denom_;  // log_denom_[n-1] = log (theta+1)_{n-1}
};

// V_{n,k} = (theta+alpha)_{k-1|alpha} / (theta+1)_{n-1}, evaluated directly.
// Throws when k > s in the finite regime.
SignedLog py_weight(const PYParams& params, int n, int k);

// (l - alpha) / (theta + n).
double py_exact_gt(const PYParams& params, int l, int n);

// Posterior mean of the weight of species j (1-based) given the
// composition: (n_j - alpha) / (theta + n).
double py_bnp_predict(const PYParams& params, const Composition& comp, int j);

// Closed-form sequential rules.
double py_predict_new(const PYParams& params, int n, int k);
double py_predict_old(const PYParams& params, int n, int n_j);

// Johnson's (l + |alpha|) / (n + |alpha| s).
double johnson_estimate(double abs_alpha, int s, int l, int n);
// Johnson with |alpha| = 1: (l + 1) / (n + s).
double jeffreys_estimate(int s, int l, int n);

// Density of the first size-biased pick, beta(1 - alpha, theta + alpha).
// alpha in [0, 1) only.
double structural_density(const PYParams& params, double x);

// E[K_n] from the structural law: E[P^{-1}(1 - (1-P)^n)] with
// P ~ beta(1 - alpha, theta + alpha). Expanding 1 - (1-P)^n as
// P sum_{i<n} (1-P)^i turns it into sum_{i<n} (theta+alpha)_i/(theta+1)_i.
double expected_k_structural(const PYParams& params, int n);

}  // namespace goodturing

#endif  // GOODTURING_PITMAN_YOR_HPP
