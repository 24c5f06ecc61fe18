#include "goodturing/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <random>

#include "goodturing/empirical.hpp"
#include "goodturing/gibbs.hpp"
#include "goodturing/oracle.hpp"
#include "goodturing/pitman_yor.hpp"
#include "goodturing/sampler.hpp"
#include "goodturing/specfun.hpp"

namespace goodturing {

namespace {

double rel_err(double got, double want) {
  const double scale = std::fabs(want);
  return scale == 0.0 ? std::fabs(got) : std::fabs(got - want) / scale;
}

class Check {
 public:
  Check(std::string name, double tol) {
    r_.name = std::move(name);
    r_.tolerance = tol;
  }
  void observe(double err, const std::string& where) {
    if (!(err <= r_.worst) || std::isnan(err)) {
      r_.worst = std::isnan(err) ? HUGE_VAL : err;
      r_.detail = where;
    }
  }
  CheckResult finish() {
    r_.passed = r_.worst <= r_.tolerance;
    return r_;
  }

 private:
  CheckResult r_;
};

std::string where(const char* fmt, double a, double b = 0, double c = 0, double d = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, fmt, a, b, c, d);
  return buf;
}

const std::vector<double> kAlphaGrid{-1.0, -0.5, 0.0, 0.25, 0.5, 0.9};

// PD models across the alpha grid: theta in {0.5, 1} for alpha >= 0, s in
// {2, 3} for alpha < 0.
std::vector<std::unique_ptr<GibbsModel>> oracle_models(int capacity) {
  std::vector<std::unique_ptr<GibbsModel>> out;
  for (double a : kAlphaGrid) {
    if (a < 0) {
      for (int s : {2, 3}) out.push_back(std::make_unique<PitmanYorModel>(PYParams::finite(a, s), capacity));
    } else {
      for (double t : {0.5, 1.0}) out.push_back(std::make_unique<PitmanYorModel>(PYParams(a, t), capacity));
    }
  }
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> alpha(-1.5, 0.95), logv(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> terminal(static_cast<std::size_t>(capacity));
    for (double& v : terminal) v = std::exp(logv(rng));
    out.push_back(std::make_unique<TabulatedGibbsModel>(
        TabulatedGibbsModel::from_terminal_row(alpha(rng), terminal)));
  }
  return out;
}

CheckResult check_stirling(int n_max) {
  Check c("stirling_vs_enumeration", 1e-10);
  for (double a : kAlphaGrid) {
    const StirlingTriangle tri(n_max, a);
    for (int n = 1; n <= n_max; ++n) {
      const auto brute = oracle_stirling_row(n, a);
      for (int k = 1; k <= n; ++k) {
        c.observe(rel_err(tri.entry(n, k).to_double(), brute[k]), where("alpha=%g n=%g k=%g", a, n, k));
      }
    }
  }
  return c.finish();
}

std::vector<CheckResult> check_oracle_moments(int n_max) {
  Check total("eppf_total_is_one", 1e-10), cl("expected_cl_vs_enumeration", 1e-10),
      fm("falling_moments_vs_enumeration", 1e-10), gt("exact_gt_vs_ratio_form", 1e-10),
      ek("expected_k_vs_enumeration", 1e-10);
  const auto models = oracle_models(n_max + 1);
  for (std::size_t m = 0; m < models.size(); ++m) {
    const GibbsModel& model = *models[m];
    const StirlingTriangle tri(n_max + 1, model.alpha());
    std::vector<OracleTally> tallies;
    for (int n = 1; n <= n_max; ++n) tallies.push_back(oracle_tally(model, n));
    for (int n = 1; n <= n_max; ++n) {
      const OracleTally& t = tallies[n - 1];
      const double mi = static_cast<double>(m);
      total.observe(std::fabs(t.eppf_total - 1.0), where("model=%g n=%g", mi, n));
      ek.observe(rel_err(expected_k(model, tri, n), t.expected_k), where("model=%g n=%g", mi, n));
      for (int l = 1; l <= n; ++l) {
        cl.observe(rel_err(expected_cl(model, tri, l, n), t.expected_cl[l - 1]),
                   where("model=%g l=%g n=%g", mi, l, n));
        for (int r = 1; r <= 3; ++r) {
          const double want = t.falling[r - 1][l - 1];
          const double got = falling_factorial_moment_cl(model, tri, l, n, r);
          // Zero moments (l r > n) must come out exactly zero.
          fm.observe(want == 0.0 ? std::fabs(got) : rel_err(got, want),
                     where("model=%g l=%g n=%g r=%g", mi, l, n, r));
        }
        if (n < n_max) {
          const double ratio =
              (l + 1.0) / (n + 1.0) * tallies[n].expected_cl[l] / t.expected_cl[l - 1];
          gt.observe(rel_err(exact_gt(model, tri, l, n), ratio), where("model=%g l=%g n=%g", mi, l, n));
        }
      }
    }
  }
  return {total.finish(), cl.finish(), fm.finish(), ek.finish(), gt.finish()};
}

std::vector<CheckResult> check_weight_identities() {
  Check rec("pd_weight_recursion", 1e-10), norm("weight_stirling_normalization", 1e-10);
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (double t : {-a / 2, 0.5, 1.0, 10.0}) {
      const PitmanYorModel model(PYParams(a, t), 201);
      rec.observe(max_recursion_residual(model, 100), where("alpha=%g theta=%g", a, t));
      std::vector<double> row{0.0};
      for (int n = 1; n <= 200; ++n) {
        advance_stirling_row(row, a);
        LogSumAccumulator acc;
        for (int k = 1; k <= n; ++k) acc.add(model.weight(n, k).log() + row[k]);
        norm.observe(std::fabs(std::expm1(acc.result())), where("alpha=%g theta=%g n=%g", a, t, n));
      }
    }
  }
  return {rec.finish(), norm.finish()};
}

CheckResult check_closed_form_grid(int n_max) {
  Check c("stirling_sum_equals_closed_form", 1e-9);
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (double t : {-a / 2, 0.5, 1.0, 10.0}) {
      const PYParams params(a, t);
      const PitmanYorModel model(params, n_max + 1);
      const StirlingTriangle tri(n_max, a);
      for (int n = 1; n <= n_max; ++n) {
        for (int l = 1; l <= n; ++l) {
          c.observe(rel_err(exact_gt(model, tri, l, n), py_exact_gt(params, l, n)),
                    where("alpha=%g theta=%g l=%g n=%g", a, t, l, n));
        }
      }
    }
  }
  return c.finish();
}

CheckResult check_fixed_population() {
  Check c("fixed_population_two_forms", 1e-12);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 20);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> p(static_cast<std::size_t>(size(rng)));
    double sum = 0.0;
    for (double& x : p) sum += (x = u(rng));
    for (double& x : p) x /= sum;
    const FinitePopulation pop(p);
    for (int n = 1; n <= 12; ++n) {
      for (int l = 1; l <= n; ++l) {
        // The ratio form is 0/0 where C_{l,n} cannot occur (s = 1, l < n).
        if (pop_expected_cl(pop, l, n) == 0.0) continue;
        const double ratio =
            (l + 1.0) / (n + 1.0) * pop_expected_cl(pop, l + 1, n + 1) / pop_expected_cl(pop, l, n);
        c.observe(rel_err(pop_exact_gt(pop, l, n), ratio), where("trial=%g l=%g n=%g", trial, l, n));
      }
    }
  }
  return c.finish();
}

CheckResult check_special_cases() {
  Check c("johnson_jeffreys", 1e-12);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> s_dist(1, 50), n_dist(1, 200);
  std::uniform_real_distribution<double> a_dist(0.05, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int s = s_dist(rng), n = n_dist(rng);
    const int l = std::uniform_int_distribution<int>(1, n)(rng);
    const double a = a_dist(rng);
    c.observe(rel_err(py_exact_gt(PYParams::finite(-a, s), l, n), johnson_estimate(a, s, l, n)),
              where("abs_alpha=%g s=%g l=%g n=%g", a, s, l, n));
    c.observe(rel_err(py_exact_gt(PYParams::finite(-1.0, s), l, n), (l + 1.0) / (n + s)),
              where("jeffreys s=%g l=%g n=%g", s, l, n));
  }
  return c.finish();
}

CheckResult check_smoothing_chain() {
  Check c("smoothing_chain", 1e-12);
  for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    for (int l = 0; l <= 100; ++l) {
      const std::int64_t k = 37, n = 1000;
      const double lhs = (l + 1.0) / static_cast<double>(n) * smoothed_count(a, k, l + 1);
      c.observe(rel_err(lhs, smoothed_discovery(a, k, n, l)), where("alpha=%g l=%g", a, l));
    }
  }
  return c.finish();
}

CheckResult check_structural(int n_max) {
  Check c("structural_vs_partition_expected_k", 1e-8);
  for (double a : {0.0, 0.25, 0.5, 0.75}) {
    for (double t : {0.5, 1.0, 10.0}) {
      const PYParams params(a, t);
      const PitmanYorModel model(params, n_max);
      const StirlingTriangle tri(n_max, a);
      for (int n = 1; n <= n_max; ++n) {
        c.observe(rel_err(expected_k_structural(params, n), expected_k(model, tri, n)),
                  where("alpha=%g theta=%g n=%g", a, t, n));
      }
    }
  }
  return c.finish();
}

CheckResult check_monte_carlo() {
  // Error here is in units of standard errors.
  Check c("monte_carlo_within_4se", 4.0);
  constexpr int kReps = 100000;
  const PYParams pd(0.5, 0.5);
  const PitmanYorModel pd_model(pd, 51);
  const FinitePopulation pop({0.5, 0.3, 0.2});
  for (int n : {10, 50}) {
    const StirlingTriangle tri(n, pd.alpha());
    for (int which = 0; which < 2; ++which) {
      const SampleSource src = which == 0 ? SampleSource(pd) : SampleSource(pop);
      const auto mc = monte_carlo_moments(src, n, kReps, 1000 + n + which);
      auto z = [&](const MomentEstimate& e, double analytic) {
        return std::fabs(e.mean - analytic) / std::max(e.se, 1.0 / kReps);
      };
      const double ek = which == 0 ? expected_k(pd_model, tri, n) : pop_expected_k(pop, n);
      c.observe(z(mc.k, ek), where("source=%g n=%g K", which, n));
      for (int l = 1; l <= 5; ++l) {
        const double ecl = which == 0 ? expected_cl(pd_model, tri, l, n) : pop_expected_cl(pop, l, n);
        c.observe(z(mc.cl[l - 1], ecl), where("source=%g n=%g l=%g", which, n, l));
      }
    }
  }
  return c.finish();
}

}  // namespace

std::vector<CheckResult> run_verification(VerifyLevel level,
                                          const std::function<void(const CheckResult&)>& on_result) {
  const bool full = level == VerifyLevel::kFull;
  const int oracle_n = full ? kOracleMaxN : 8;
  std::vector<CheckResult> results;
  auto emit = [&](CheckResult r) {
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  };
  emit(check_stirling(oracle_n));
  for (auto& r : check_oracle_moments(oracle_n)) emit(std::move(r));
  for (auto& r : check_weight_identities()) emit(std::move(r));
  emit(check_closed_form_grid(100));
  emit(check_fixed_population());
  emit(check_special_cases());
  emit(check_smoothing_chain());
  emit(check_structural(200));
  if (full) emit(check_monte_carlo());
  return results;
}

std::string format_check(const CheckResult& r) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "\tworst=%.3e\ttol=%.1e", r.worst, r.tolerance);
  std::string line = (r.passed ? "PASS\t" : "FAIL\t") + r.name + buf;
  if (!r.passed && !r.detail.empty()) line += "\tat " + r.detail;
  return line;
}

}  // namespace goodturing
