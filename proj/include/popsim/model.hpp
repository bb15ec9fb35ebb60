#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "popsim/rng.hpp"

namespace popsim {

using agent_id = std::uint32_t;

// One pairwise interaction: the ordered (initiator, responder) agent pair
// plus its time label. Labels are 1-based and unique within a round.
struct interaction {
  agent_id initiator = 0;
  agent_id responder = 0;
  std::uint64_t label = 0;

  bool operator==(const interaction&) const = default;

  bool shares_agent(const interaction& other) const noexcept {
    return initiator == other.initiator || initiator == other.responder ||
           responder == other.initiator || responder == other.responder;
  }
};

// A round: an ordered sequence of labeled interactions over n agents.
// Interactions are stored in ascending label order and labels are exactly
// 1..length().
struct round {
  std::uint32_t n_agents = 0;
  std::vector<interaction> interactions;

  std::uint64_t length() const noexcept { return interactions.size(); }
};

// A sequence of k-matchings: every step is a set of k agent pairs whose 2k
// endpoints are pairwise distinct. Pairs are stored with the smaller agent
// first.
struct k_parallel_schedule {
  std::uint32_t n_agents = 0;
  std::uint32_t k = 0;
  std::vector<std::vector<std::pair<agent_id, agent_id>>> steps;
};

namespace detail {

inline void require_population(std::uint32_t n) {
  if (n < 2) {
    throw std::invalid_argument("population must be >= 2");
  }
}

}  // namespace detail

// Draws a round of T interactions: per step an ordered pair (i, j), i != j,
// uniform over all n(n-1) ordered pairs. j is drawn on [0, n-1) and shifted
// past i, which is exactly uniform without a rejection loop.
inline round sample_round(std::uint32_t n, std::uint64_t length, rng_stream& rng) {
  detail::require_population(n);
  round r;
  r.n_agents = n;
  r.interactions.reserve(length);
  for (std::uint64_t t = 1; t <= length; ++t) {
    const auto i = static_cast<agent_id>(rng.next_below(n));
    auto j = static_cast<agent_id>(rng.next_below(n - 1));
    if (j >= i) {
      ++j;
    }
    r.interactions.push_back(interaction{i, j, t});
  }
  return r;
}

// Deterministic worst case: interaction t couples agents (t-1) mod n and
// t mod n, so consecutive interactions always share an agent and the whole
// round forms a single monotone chain of n interactions, even though every
// agent participates in only two of them.
inline round adversarial_chain_round(std::uint32_t n) {
  detail::require_population(n);
  round r;
  r.n_agents = n;
  r.interactions.reserve(n);
  for (std::uint64_t t = 1; t <= n; ++t) {
    const auto a = static_cast<agent_id>((t - 1) % n);
    const auto b = static_cast<agent_id>(t % n);
    r.interactions.push_back(interaction{a, b, t});
  }
  return r;
}

// Each step is an independent uniformly random k-matching, obtained by
// pairing the first 2k entries of a random permutation of the agents.
// Only the first 2k positions of the permutation are materialized.
inline k_parallel_schedule sample_k_parallel_schedule(std::uint32_t n, std::uint32_t k,
                                                      std::uint64_t steps, rng_stream& rng) {
  detail::require_population(n);
  if (k < 1 || k > n / 2) {
    throw std::invalid_argument("matching size k must satisfy 1 <= k <= n/2");
  }
  k_parallel_schedule schedule;
  schedule.n_agents = n;
  schedule.k = k;
  schedule.steps.reserve(steps);

  std::vector<agent_id> perm(n);
  for (std::uint64_t s = 0; s < steps; ++s) {
    std::iota(perm.begin(), perm.end(), agent_id{0});
    for (std::uint32_t i = 0; i < 2 * k; ++i) {
      const auto j = i + static_cast<std::uint32_t>(rng.next_below(n - i));
      std::swap(perm[i], perm[j]);
    }
    std::vector<std::pair<agent_id, agent_id>> matching;
    matching.reserve(k);
    for (std::uint32_t p = 0; p < k; ++p) {
      const agent_id a = perm[2 * p];
      const agent_id b = perm[2 * p + 1];
      matching.emplace_back(std::min(a, b), std::max(a, b));
    }
    schedule.steps.push_back(std::move(matching));
  }
  return schedule;
}

// Number of interactions each agent participates in, indexed by agent.
inline std::vector<std::uint32_t> agent_degrees(const round& r) {
  std::vector<std::uint32_t> deg(r.n_agents, 0);
  for (const auto& it : r.interactions) {
    ++deg[it.initiator];
    ++deg[it.responder];
  }
  return deg;
}

// Histogram degree -> number of agents, covering all n agents (degree 0
// included). Sum of degree * count equals 2T.
inline std::map<std::uint32_t, std::uint32_t> agent_degree_histogram(const round& r) {
  std::map<std::uint32_t, std::uint32_t> hist;
  for (const auto d : agent_degrees(r)) {
    ++hist[d];
  }
  return hist;
}

}  // namespace popsim
