#include "goodturing/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>

namespace goodturing {

namespace {

constexpr int kAliasThreshold = 32;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SampleSummary summarize(std::vector<int> parts) {
  std::map<int, std::int64_t> counts;
  for (int p : parts) ++counts[p];
  SampleSummary out;
  out.k = static_cast<int>(parts.size());
  out.composition = Composition(std::move(parts));
  out.frequency_counts = FrequencyCounts(std::move(counts));
  return out;
}

// Chooses among "new" (returns -1) and the existing species given their
// predictive probabilities. Rounding leftovers fall to the last species.
template <typename OldProb>
int choose(double u, double p_new, const std::vector<int>& parts, OldProb old_prob) {
  if (parts.empty() || u < p_new) return -1;
  double cum = p_new;
  const int k = static_cast<int>(parts.size());
  for (int j = 0; j < k; ++j) {
    cum += old_prob(parts[j]);
    if (u < cum) return j;
  }
  return k - 1;
}

template <typename Step>
SampleSummary run_urn(int n, Rng& rng, Step step) {
  if (n < 1) throw std::out_of_range("sample size must be >= 1");
  std::vector<int> parts;
  for (int m = 0; m < n; ++m) {
    const int j = step(m, parts, rng.uniform());
    if (j < 0) {
      parts.push_back(1);
    } else {
      ++parts[j];
    }
  }
  return summarize(std::move(parts));
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL));
}

SampleSummary sample_gibbs(const GibbsModel& model, int n, Rng& rng) {
  if (n > model.max_n()) throw std::out_of_range("sample size exceeds the model's weight range");
  const double a = model.alpha();
  return run_urn(n, rng, [&](int m, const std::vector<int>& parts, double u) {
    if (parts.empty()) return -1;
    const int k = static_cast<int>(parts.size());
    const SignedLog v = model.weight(m, k);
    const double p_new = (model.weight(m + 1, k + 1) / v).to_double();
    const double ratio = (model.weight(m + 1, k) / v).to_double();
    return choose(u, p_new, parts, [&](int nj) { return (nj - a) * ratio; });
  });
}

SampleSummary sample_gibbs(const GibbsModel& model, int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_gibbs(model, n, rng);
}

SampleSummary sample_gibbs(const PYParams& params, int n, Rng& rng) {
  const double a = params.alpha(), t = params.theta();
  return run_urn(n, rng, [&](int m, const std::vector<int>& parts, double u) {
    if (parts.empty()) return -1;
    const int k = static_cast<int>(parts.size());
    const double p_new = (t + k * a) / (t + m);
    return choose(u, p_new, parts, [&](int nj) { return (nj - a) / (t + m); });
  });
}

SampleSummary sample_gibbs(const PYParams& params, int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_gibbs(params, n, rng);
}

CategoricalSampler::CategoricalSampler(const FinitePopulation& pop) {
  const auto probs = pop.probs();
  const int s = static_cast<int>(probs.size());
  if (s <= kAliasThreshold) {
    double cum = 0.0;
    for (double p : probs) cumulative_.push_back(cum += p);
    return;
  }
  // Vose's alias method.
  accept_.assign(static_cast<std::size_t>(s), 1.0);
  alias_.resize(static_cast<std::size_t>(s));
  std::vector<double> scaled;
  std::vector<int> small, large;
  for (int i = 0; i < s; ++i) {
    scaled.push_back(probs[i] * s);
    alias_[i] = i;
    (scaled.back() < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const int lo = small.back();
    small.pop_back();
    const int hi = large.back();
    accept_[lo] = scaled[lo];
    alias_[lo] = hi;
    scaled[hi] = (scaled[hi] + scaled[lo]) - 1.0;
    if (scaled[hi] < 1.0) {
      large.pop_back();
      small.push_back(hi);
    }
  }
}

int CategoricalSampler::draw(Rng& rng) const {
  if (alias_.empty()) {
    const double u = rng.uniform() * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min(static_cast<int>(it - cumulative_.begin()),
                    static_cast<int>(cumulative_.size()) - 1);
  }
  const double u = rng.uniform() * static_cast<double>(alias_.size());
  const int column = std::min(static_cast<int>(u), static_cast<int>(alias_.size()) - 1);
  return (u - column) < accept_[column] ? column : alias_[column];
}

SampleSummary sample_population(const FinitePopulation& pop, int n, Rng& rng) {
  if (n < 1) throw std::out_of_range("sample size must be >= 1");
  const CategoricalSampler sampler(pop);
  std::vector<int> position(static_cast<std::size_t>(pop.s()), -1);
  std::vector<int> parts;
  for (int i = 0; i < n; ++i) {
    const int species = sampler.draw(rng);
    if (position[species] < 0) {
      position[species] = static_cast<int>(parts.size());
      parts.push_back(1);
    } else {
      ++parts[position[species]];
    }
  }
  return summarize(std::move(parts));
}

SampleSummary sample_population(const FinitePopulation& pop, int n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_population(pop, n, rng);
}

MonteCarloMoments monte_carlo_moments(const SampleSource& source, int n, int reps,
                                      std::uint64_t seed, int threads) {
  if (n < 1) throw std::out_of_range("sample size must be >= 1");
  if (reps < 100) throw std::invalid_argument("Monte Carlo needs reps >= 100");
  if (const auto* m = std::get_if<std::reference_wrapper<const GibbsModel>>(&source)) {
    if (n > m->get().max_n()) throw std::out_of_range("sample size exceeds the model's weight range");
  }
  threads = std::max(1, threads);

  // Slot 0 holds K_n, slot l holds C_{l,n}.
  const std::size_t slots = static_cast<std::size_t>(n) + 1;
  struct Sums {
    std::vector<std::uint64_t> sum, sum_sq;
  };
  std::vector<Sums> partial(static_cast<std::size_t>(threads),
                            Sums{std::vector<std::uint64_t>(slots), std::vector<std::uint64_t>(slots)});
  std::atomic<int> next_rep{0};

  auto worker = [&](Sums& acc) {
    std::vector<std::uint64_t> stat(slots);
    for (int rep; (rep = next_rep.fetch_add(1)) < reps;) {
      Rng rng(stream_seed(seed, static_cast<std::uint64_t>(rep)));
      const SampleSummary s = std::visit(
          [&](const auto& src) -> SampleSummary {
            using T = std::decay_t<decltype(src)>;
            if constexpr (std::is_same_v<T, FinitePopulation>) {
              return sample_population(src, n, rng);
            } else if constexpr (std::is_same_v<T, PYParams>) {
              return sample_gibbs(src, n, rng);
            } else {
              return sample_gibbs(src.get(), n, rng);
            }
          },
          source);
      std::fill(stat.begin(), stat.end(), 0);
      stat[0] = static_cast<std::uint64_t>(s.k);
      for (const auto& [l, c] : s.frequency_counts.counts()) stat[l] = static_cast<std::uint64_t>(c);
      for (std::size_t i = 0; i < slots; ++i) {
        acc.sum[i] += stat[i];
        acc.sum_sq[i] += stat[i] * stat[i];
      }
    }
  };

  if (threads == 1) {
    worker(partial[0]);
  } else {
    std::vector<std::jthread> pool;
    for (auto& acc : partial) pool.emplace_back(worker, std::ref(acc));
  }

  MonteCarloMoments out;
  out.n = n;
  out.reps = reps;
  const double r = reps;
  auto estimate = [&](std::size_t i) {
    std::uint64_t s = 0, ss = 0;
    for (const auto& acc : partial) {
      s += acc.sum[i];
      ss += acc.sum_sq[i];
    }
    const double mean = static_cast<double>(s) / r;
    const double var = std::max(0.0, (static_cast<double>(ss) - static_cast<double>(s) * mean) / (r - 1.0));
    return MomentEstimate{mean, std::sqrt(var / r)};
  };
  out.k = estimate(0);
  for (std::size_t l = 1; l < slots; ++l) out.cl.push_back(estimate(l));
  return out;
}

}  // namespace goodturing
