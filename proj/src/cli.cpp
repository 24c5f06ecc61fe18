#include "goodturing/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

#include "goodturing/empirical.hpp"
#include "goodturing/gibbs.hpp"
#include "goodturing/io.hpp"
#include "goodturing/pitman_yor.hpp"
#include "goodturing/report.hpp"
#include "goodturing/sampler.hpp"
#include "goodturing/specfun.hpp"
#include "goodturing/verify.hpp"

namespace goodturing {

namespace {

// Largest |z| before a Monte Carlo row is flagged.
constexpr double kFlagSe = 4.0;
// Tolerance for `bnp --check`.
constexpr double kCheckTolerance = 1e-9;

class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  bool human = false;
  std::string counts_file, sample_file, mode = "approx", method = "closed", level = "fast";
  std::string probs;
  double alpha = 0.0, theta = 0.0;
  int s = 0, l = 0, n = 0, reps = 10000, threads = 1;
  std::uint64_t seed = 0;
  bool check = false;
};

FrequencyCounts load_counts(const Options& o) {
  if (!o.counts_file.empty()) return read_counts_file(o.counts_file);
  return counts_from_sample(read_sample_file(o.sample_file));
}

// theta directly, or through s when alpha < 0.
PYParams resolve_params(const Options& o, const CLI::Option* theta_opt, const CLI::Option* s_opt) {
  const bool has_theta = theta_opt->count() > 0, has_s = s_opt->count() > 0;
  if (o.alpha < 0.0) {
    if (!has_s) throw InputError("--s is required when alpha < 0");
    const PYParams inferred = PYParams::finite(o.alpha, o.s);
    if (has_theta && std::fabs(o.theta - inferred.theta()) > 1e-12 * std::max(1.0, inferred.theta())) {
      throw InputError("--theta disagrees with |alpha| * s = " + format_value(inferred.theta()));
    }
    return inferred;
  }
  if (has_s) throw InputError("--s only applies when alpha < 0");
  if (!has_theta) throw InputError("--theta is required when alpha >= 0");
  return PYParams(o.alpha, o.theta);
}

void add_params(Report& r, const PYParams& p) {
  r.add("alpha", p.alpha()).add("theta", p.theta());
  if (p.s()) r.add("s", static_cast<std::int64_t>(*p.s()));
}

int cmd_gt(const Options& o, std::ostream& out, bool human) {
  const FrequencyCounts fc = load_counts(o);
  Report r;
  r.add("estimator", o.mode == "ratio" ? "gt_ratio" : "gt_approx");
  r.add("n", fc.n()).add("k", fc.k()).add("l", static_cast<std::int64_t>(o.l));
  r.add("c_l", fc.count(o.l)).add("c_l_plus_1", fc.count(o.l + 1));
  if (o.mode == "ratio") {
    if (o.l < 1) throw InputError("--l must be >= 1 in ratio mode");
    r.add("value", gt_ratio(fc, o.l));
  } else {
    r.add("value", gt_approx(fc, o.l));
  }
  out << format_report(r, human);
  return kExitOk;
}

int cmd_bnp(const Options& o, const PYParams& params, std::ostream& out, bool human) {
  if (o.n < 1 || o.l < 1 || o.l > o.n) throw InputError("need 1 <= l <= n");
  Report r;
  r.add("estimator", "exact_gt");
  add_params(r, params);
  r.add("l", static_cast<std::int64_t>(o.l)).add("n", static_cast<std::int64_t>(o.n));
  const double closed = py_exact_gt(params, o.l, o.n);
  auto stirling = [&] { return exact_gt(PitmanYorModel(params, o.n + 1), o.l, o.n); };
  if (o.check) {
    const double via_sum = stirling();
    const double diff = std::fabs(closed - via_sum);
    const bool ok = diff <= kCheckTolerance * std::fabs(closed);
    r.add("method", "check").add("closed", closed).add("stirling", via_sum);
    r.add("abs_diff", diff).add("status", ok ? "ok" : "mismatch");
    out << format_report(r, human);
    return ok ? kExitOk : kExitCheckFailed;
  }
  r.add("method", o.method).add("value", o.method == "stirling" ? stirling() : closed);
  out << format_report(r, human);
  return kExitOk;
}

int cmd_smooth(const Options& o, std::ostream& out, bool human) {
  if (o.l < 1) throw InputError("--l must be >= 1");
  const FrequencyCounts fc = load_counts(o);
  Report r;
  r.add("estimator", "smoothed_gt").add("alpha", o.alpha);
  r.add("n", fc.n()).add("k", fc.k()).add("l", static_cast<std::int64_t>(o.l));
  r.add("c_l", fc.count(o.l));
  r.add("smoothed_c_l", smoothed_count(o.alpha, fc.k(), o.l));
  r.add("value", smoothed_discovery(o.alpha, fc.k(), fc.n(), o.l));
  out << format_report(r, human);
  return kExitOk;
}

int cmd_simulate(const Options& o, const std::optional<PYParams>& params,
                 const std::optional<FinitePopulation>& pop, std::ostream& out, bool human) {
  if (o.n < 1) throw InputError("--n must be >= 1");
  if (o.reps < 100) throw InputError("--reps must be >= 100");
  Report r;
  std::vector<double> analytic;  // [0] = E[K_n], [l] = E[C_{l,n}]
  std::optional<SampleSource> source;
  if (params) {
    r.add("source", "pitman_yor");
    add_params(r, *params);
    const PitmanYorModel model(*params, o.n);
    const StirlingTriangle tri(o.n, params->alpha());
    analytic.push_back(expected_k(model, tri, o.n));
    for (int l = 1; l <= o.n; ++l) analytic.push_back(expected_cl(model, tri, l, o.n));
    source = *params;
  } else {
    r.add("source", "population").add("s", static_cast<std::int64_t>(pop->s()));
    analytic.push_back(pop_expected_k(*pop, o.n));
    for (int l = 1; l <= o.n; ++l) analytic.push_back(pop_expected_cl(*pop, l, o.n));
    source = *pop;
  }
  r.add("n", static_cast<std::int64_t>(o.n)).add("reps", static_cast<std::int64_t>(o.reps));
  r.add("seed", static_cast<std::int64_t>(o.seed));
  const MonteCarloMoments mc = monte_carlo_moments(*source, o.n, o.reps, o.seed, o.threads);

  r.columns = {"statistic", "l", "mc_mean", "mc_se", "analytic", "z", "flag"};
  auto row = [&](const std::string& name, int l, const MomentEstimate& e, double exact) {
    // A zero sample variance still resolves the mean to 1/reps.
    const double z = (e.mean - exact) / std::max(e.se, 1.0 / o.reps);
    r.rows.push_back({name, static_cast<std::int64_t>(l), e.mean, e.se, exact, z,
                      std::fabs(z) <= kFlagSe ? "ok" : "far"});
  };
  row("K", 0, mc.k, analytic[0]);
  for (int l = 1; l <= o.n; ++l) row("C", l, mc.cl[l - 1], analytic[l]);
  out << format_report(r, human);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const VerifyLevel level = o.level == "full" ? VerifyLevel::kFull : VerifyLevel::kFast;
  bool ok = true;
  run_verification(level, [&](const CheckResult& c) {
    ok = ok && c.passed;
    out << format_check(c) << '\n' << std::flush;
  });
  out << (ok ? "verify\tok\n" : "verify\tfailed\n");
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Good-Turing and Pitman-Yor discovery probability estimates"};
  app.name("goodturing");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--human", o.human, "Print numbers with 6 significant digits");

  auto* gt = app.add_subcommand("gt", "Empirical Good-Turing estimate from counts or a sample");
  auto* gt_counts = gt->add_option("--counts", o.counts_file, "Counts file of `l,c_l` lines");
  auto* gt_sample = gt->add_option("--sample", o.sample_file, "Sample file, one label per line");
  gt_counts->excludes(gt_sample);
  gt->add_option("--l", o.l, "Frequency l (0 gives the missing mass in approx mode)")->required();
  gt->add_option("--mode", o.mode, "approx: (l+1)c_{l+1}/n, ratio: divided by c_l")
      ->check(CLI::IsMember({"approx", "ratio"}));

  auto* bnp = app.add_subcommand("bnp", "Exact Good-Turing estimate under PD(alpha, theta)");
  bnp->add_option("--alpha", o.alpha, "Discount, < 1")->required();
  auto* bnp_theta = bnp->add_option("--theta", o.theta, "Concentration");
  auto* bnp_s = bnp->add_option("--s", o.s, "Number of species (alpha < 0)");
  bnp->add_option("--l", o.l)->required();
  bnp->add_option("--n", o.n)->required();
  bnp->add_option("--method", o.method, "closed: (l-alpha)/(theta+n), stirling: weighted Stirling sums")
      ->check(CLI::IsMember({"closed", "stirling"}));
  bnp->add_flag("--check", o.check, "Compute both methods and compare");

  auto* smooth = app.add_subcommand("smooth", "Discovery estimate from PD-smoothed frequency counts");
  smooth->add_option("--alpha", o.alpha, "Discount in (0, 1)")->required();
  auto* sm_counts = smooth->add_option("--counts", o.counts_file);
  auto* sm_sample = smooth->add_option("--sample", o.sample_file);
  sm_counts->excludes(sm_sample);
  smooth->add_option("--l", o.l)->required();

  auto* sim = app.add_subcommand("simulate", "Monte Carlo moments of K_n and C_{l,n}");
  sim->add_option("--alpha", o.alpha);
  auto* sim_theta = sim->add_option("--theta", o.theta);
  auto* sim_s = sim->add_option("--s", o.s);
  auto* sim_probs = sim->add_option("--probs", o.probs, "Population frequencies, comma separated");
  sim->add_option("--n", o.n)->required();
  sim->add_option("--reps", o.reps);
  sim->add_option("--seed", o.seed)->required();
  sim->add_option("--threads", o.threads);

  auto* verify = app.add_subcommand("verify", "Run the identity and enumeration checks");
  verify->add_option("--level", o.level)->check(CLI::IsMember({"fast", "full"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (gt->parsed() || smooth->parsed()) {
      if (o.counts_file.empty() && o.sample_file.empty()) throw InputError("one of --counts or --sample is required");
      return gt->parsed() ? cmd_gt(o, out, o.human) : cmd_smooth(o, out, o.human);
    }
    if (bnp->parsed()) return cmd_bnp(o, resolve_params(o, bnp_theta, bnp_s), out, o.human);
    if (sim->parsed()) {
      if (sim_probs->count() > 0) {
        std::vector<int> dropped;
        FinitePopulation pop = parse_population(o.probs, &dropped);
        for (int pos : dropped) err << "warning: dropping zero-probability species " << pos << '\n';
        return cmd_simulate(o, std::nullopt, pop, out, o.human);
      }
      return cmd_simulate(o, resolve_params(o, sim_theta, sim_s), std::nullopt, out, o.human);
    }
    return cmd_verify(o, out);
  } catch (const UndefinedEstimate& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndefinedEstimate;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace goodturing
