#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "popsim/dependency.hpp"
#include "popsim/model.hpp"
#include "popsim/rng.hpp"

namespace popsim {

// Aggregate of the chain statistic over repeated random rounds at one
// population size. ratio normalizes the mean chain by ln n / ln ln n.
struct sweep_result {
  std::uint64_t n = 0;
  std::uint64_t trials = 0;
  double mean_chain = 0.0;
  double std_chain = 0.0;
  double ci95 = 0.0;  // half-width, normal approximation; meaningful for trials >= 30
  double mean_max_degree = 0.0;
  double ratio = 0.0;
};

// Union-bound tail on long monotone chains plus its measured counterpart.
// bound_value is 8^k * n / k!; empirical_freq is the fraction of sampled
// rounds whose chain reaches k interactions.
struct tail_bound {
  std::uint64_t n = 0;
  double c = 0.0;
  std::uint64_t k = 0;
  double bound_value = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t exceedances = 0;
  double empirical_freq = 0.0;
};

struct bins_result {
  std::uint64_t n_bins = 0;
  std::uint64_t n_balls = 0;
  std::uint64_t trials = 0;
  double mean_max_load = 0.0;
  double predicted = 0.0;  // inverse_gamma(2n) - 3/2
};

namespace detail {

// Runs fn(trial) for trial = 0..trials-1 on up to `jobs` workers. Each call
// must only touch trial-local state (typically a per-trial result slot), so
// results are independent of the worker count and of scheduling order.
template <typename Fn>
inline void for_each_trial(std::uint64_t trials, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || trials < 2) {
    for (std::uint64_t t = 0; t < trials; ++t) {
      fn(t);
    }
    return;
  }
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(jobs, trials));
  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::uint64_t t = next.fetch_add(1);
        if (t >= trials) {
          return;
        }
        fn(t);
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
}

// Mean and sample standard deviation folded in index order, so sums are
// bit-identical regardless of how trials were scheduled.
inline std::pair<double, double> mean_and_sd(const std::vector<std::uint64_t>& xs) {
  const auto n = static_cast<double>(xs.size());
  double sum = 0.0;
  for (const auto x : xs) {
    sum += static_cast<double>(x);
  }
  const double mean = sum / n;
  if (xs.size() < 2) {
    return {mean, 0.0};
  }
  double ss = 0.0;
  for (const auto x : xs) {
    const double d = static_cast<double>(x) - mean;
    ss += d * d;
  }
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace detail

// Inverse of Euler's gamma function on its increasing branch, by bisection
// on log-gamma (monotone for arguments >= 2). The returned y satisfies
// gamma(y) = x with |error in y| below 1e-9.
inline double inverse_gamma(double x) {
  if (!(x >= 2.0)) {
    throw std::domain_error("inverse_gamma requires x >= 2");
  }
  const double target = std::log(x);
  double lo = 2.0;
  double hi = 4.0;
  while (std::lgamma(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::lgamma(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Throws 2n balls into n bins per trial and compares the mean maximum load
// against the classical asymptotic inverse_gamma(2n) - 3/2.
inline bins_result balls_bins_max_load(std::uint64_t n_bins, std::uint64_t trials,
                                       std::uint64_t master_seed, unsigned jobs = 1) {
  if (n_bins < 1) {
    throw std::invalid_argument("n_bins must be >= 1");
  }
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  std::vector<std::uint64_t> max_load(trials, 0);
  detail::for_each_trial(trials, jobs, [&](std::uint64_t t) {
    rng_stream rng(derive_seed(master_seed, n_bins), t);
    std::vector<std::uint32_t> load(n_bins, 0);
    std::uint32_t top = 0;
    for (std::uint64_t ball = 0; ball < 2 * n_bins; ++ball) {
      const auto bin = rng.next_below(n_bins);
      top = std::max(top, ++load[bin]);
    }
    max_load[t] = top;
  });

  bins_result out;
  out.n_bins = n_bins;
  out.n_balls = 2 * n_bins;
  out.trials = trials;
  out.mean_max_load = detail::mean_and_sd(max_load).first;
  out.predicted = inverse_gamma(2.0 * static_cast<double>(n_bins)) - 1.5;
  return out;
}

namespace detail {

inline sweep_result sweep_one(std::uint32_t n, std::uint64_t trials,
                              std::uint64_t master_seed, unsigned jobs) {
  std::vector<std::uint64_t> chain(trials, 0);
  std::vector<std::uint64_t> degree(trials, 0);
  for_each_trial(trials, jobs, [&](std::uint64_t t) {
    rng_stream rng(derive_seed(master_seed, n), t);
    const auto r = sample_round(n, n, rng);
    const auto stats = compute_chain_stats(r);
    chain[t] = stats.chain_size;
    degree[t] = stats.max_agent_degree;
  });

  sweep_result out;
  out.n = n;
  out.trials = trials;
  const auto [mean, sd] = mean_and_sd(chain);
  out.mean_chain = mean;
  out.std_chain = sd;
  out.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(trials));
  out.mean_max_degree = mean_and_sd(degree).first;
  const double ln_n = std::log(static_cast<double>(n));
  out.ratio = out.mean_chain / (ln_n / std::log(ln_n));
  return out;
}

}  // namespace detail

// For each population size, samples `trials` independent rounds of length n
// and aggregates chain size and max agent degree. Natural logarithms in the
// normalizer.
inline std::vector<sweep_result> sweep_expected_chain(const std::vector<std::uint32_t>& n_list,
                                                      std::uint64_t trials,
                                                      std::uint64_t master_seed,
                                                      unsigned jobs = 1) {
  if (trials < 2) {
    throw std::invalid_argument("sweep requires trials >= 2");
  }
  for (const auto n : n_list) {
    if (n < 2) {
      throw std::invalid_argument("population must be >= 2");
    }
  }
  std::vector<sweep_result> out;
  out.reserve(n_list.size());
  for (const auto n : n_list) {
    out.push_back(detail::sweep_one(n, trials, master_seed, jobs));
  }
  return out;
}

// Chain length ceil((3+c) ln n / ln ln n) at which the union-bound tail
// drops below n^-c. Requires n >= 3 so that ln ln n is positive.
inline std::uint64_t chain_length_threshold(std::uint64_t n, double c) {
  if (n < 3) {
    throw std::domain_error("chain length threshold requires n >= 3");
  }
  if (!(c > 0.0)) {
    throw std::domain_error("constant c must be positive");
  }
  const double ln_n = std::log(static_cast<double>(n));
  return static_cast<std::uint64_t>(std::ceil((3.0 + c) * ln_n / std::log(ln_n)));
}

// 8^k * n / k!, evaluated as exp of a log-space sum so desk-scale k never
// overflows.
inline double chain_tail_bound(std::uint64_t n, std::uint64_t k) {
  if (n < 1 || k < 1) {
    throw std::domain_error("chain tail bound requires n >= 1 and k >= 1");
  }
  const double log_value = static_cast<double>(k) * std::log(8.0) +
                           std::log(static_cast<double>(n)) -
                           std::lgamma(static_cast<double>(k) + 1.0);
  return std::exp(log_value);
}

// Upper bound 2^(k-1) * n^(2k+1) / k! on the number of labeled interference
// paths of k interactions, in log space.
inline double interference_path_count_bound(std::uint64_t n, std::uint64_t k) {
  if (n < 2 || k < 1) {
    throw std::domain_error("path count bound requires n >= 2 and k >= 1");
  }
  const double kd = static_cast<double>(k);
  const double log_value = (kd - 1.0) * std::log(2.0) +
                           (2.0 * kd + 1.0) * std::log(static_cast<double>(n)) -
                           std::lgamma(kd + 1.0);
  return std::exp(log_value);
}

// Probability (1 / C(n,2))^k that one fixed labeled interference path is
// realized by the sampler.
inline double path_probability(std::uint64_t n, std::uint64_t k) {
  if (n < 2 || k < 1) {
    throw std::domain_error("path probability requires n >= 2 and k >= 1");
  }
  const double pairs = 0.5 * static_cast<double>(n) * (static_cast<double>(n) - 1.0);
  return std::pow(1.0 / pairs, static_cast<double>(k));
}

// Bound side only: picks k from (n, c) and evaluates the tail bound.
inline tail_bound predict_chain_tail(std::uint64_t n, double c) {
  tail_bound out;
  out.n = n;
  out.c = c;
  out.k = chain_length_threshold(n, c);
  out.bound_value = chain_tail_bound(n, out.k);
  return out;
}

// Empirical side: fraction of sampled rounds (length n) whose chain reaches
// k interactions, over independent per-trial streams.
inline tail_bound tail_frequency(std::uint32_t n, std::uint64_t k, std::uint64_t trials,
                                 std::uint64_t master_seed, unsigned jobs = 1) {
  detail::require_population(n);
  if (k < 1) {
    throw std::invalid_argument("path length k must be >= 1");
  }
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  std::vector<std::uint8_t> exceeded(trials, 0);
  detail::for_each_trial(trials, jobs, [&](std::uint64_t t) {
    rng_stream rng(derive_seed(master_seed, n), t);
    const auto r = sample_round(n, n, rng);
    exceeded[t] = compute_chain_stats(r).chain_size >= k ? 1 : 0;
  });

  tail_bound out;
  out.n = n;
  out.k = k;
  out.bound_value = chain_tail_bound(n, k);
  out.trials = trials;
  for (const auto e : exceeded) {
    out.exceedances += e;
  }
  out.empirical_freq = static_cast<double>(out.exceedances) / static_cast<double>(trials);
  return out;
}

}  // namespace popsim
