#ifndef GOODTURING_SAMPLER_HPP
#define GOODTURING_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <variant>
#include <vector>

#include "goodturing/empirical.hpp"
#include "goodturing/gibbs.hpp"
#include "goodturing/pitman_yor.hpp"

namespace goodturing {

// Seed of the independent stream `stream` under master seed `seed`
// (SplitMix64 finalizer over both). Rep r of a Monte Carlo run always uses
// stream r, so results don't depend on how reps are scheduled.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct SampleSummary {
  Composition composition;  // species sizes in order of first appearance
  FrequencyCounts frequency_counts;
  int k = 0;
};

// Sequential urn driven by the model's weights:
// new species w.p. V_{m+1,k+1}/V_{m,k}, species j w.p. (n_j - alpha) V_{m+1,k}/V_{m,k}.
SampleSummary sample_gibbs(const GibbsModel& model, int n, Rng& rng);
SampleSummary sample_gibbs(const GibbsModel& model, int n, std::uint64_t seed);

// Same urn using the PD closed forms (theta + k alpha)/(theta + m) and
// (n_j - alpha)/(theta + m).
SampleSummary sample_gibbs(const PYParams& params, int n, Rng& rng);
SampleSummary sample_gibbs(const PYParams& params, int n, std::uint64_t seed);

// Categorical draws over a finite population: linear scan for up to 32
// species, alias table above.
class CategoricalSampler {
 public:
  explicit CategoricalSampler(const FinitePopulation& pop);
  int draw(Rng& rng) const;
  bool uses_alias() const { return !alias_.empty(); }

 private:
  std::vector<double> cumulative_;
  std::vector<double> accept_;
  std::vector<int> alias_;
};

SampleSummary sample_population(const FinitePopulation& pop, int n, Rng& rng);
SampleSummary sample_population(const FinitePopulation& pop, int n, std::uint64_t seed);

using SampleSource =
    std::variant<std::reference_wrapper<const GibbsModel>, PYParams, FinitePopulation>;

struct MomentEstimate {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
};

struct MonteCarloMoments {
  int n = 0;
  int reps = 0;
  MomentEstimate k;
  std::vector<MomentEstimate> cl;  // cl[l-1] estimates E[C_{l,n}]
};

// Means and standard errors of K_n and C_{l,n}, l = 1..n, over `reps`
// independent samples. Per-rep statistics are integers and are summed
// exactly, so the result is identical for any thread count.
MonteCarloMoments monte_carlo_moments(const SampleSource& source, int n, int reps,
                                      std::uint64_t seed, int threads = 1);

}  // namespace goodturing

#endif  // GOODTURING_SAMPLER_HPP
