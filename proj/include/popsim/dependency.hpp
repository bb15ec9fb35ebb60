#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "popsim/model.hpp"

namespace popsim {

// Chain statistics of a round's dependency DAG. The DAG has one vertex per
// interaction and an edge (v, u) whenever v's label is smaller and the two
// interactions share at least one agent. A monotone interference path of
// chain_size interactions corresponds to a directed path of path_edges
// edges; chain_size is what a black-box executor pays in parallel steps.
struct chain_stats {
  std::uint64_t chain_size = 0;        // vertices on the longest directed path
  std::uint64_t path_edges = 0;        // chain_size - 1 (0 for an empty round)
  std::uint64_t level_count = 0;       // equals chain_size for nonempty rounds
  std::uint64_t max_agent_degree = 0;  // most interactions sharing one agent

  bool operator==(const chain_stats&) const = default;
};

// Partition of a round's labels by DAG level: level(u) is the length in
// edges of the longest directed path ending at u, so interactions on the
// same level never share an agent.
struct level_decomposition {
  std::vector<std::uint64_t> level_of;             // index label-1 -> level
  std::vector<std::vector<std::uint64_t>> levels;  // level -> labels, ascending
};

namespace detail {

// Per-interaction depth in one pass over labels in ascending order:
// depth(u) = 1 + max(best[a], best[b]) where best[x] is the largest depth
// of an earlier interaction involving agent x (0 if none). The DAG is
// never materialized; work is linear in T + n.
inline std::vector<std::uint64_t> interaction_depths(const round& r) {
  std::vector<std::uint64_t> best(r.n_agents, 0);
  std::vector<std::uint64_t> depth;
  depth.reserve(r.interactions.size());
  for (const auto& it : r.interactions) {
    const std::uint64_t d = 1 + std::max(best[it.initiator], best[it.responder]);
    best[it.initiator] = d;
    best[it.responder] = d;
    depth.push_back(d);
  }
  return depth;
}

}  // namespace detail

inline chain_stats compute_chain_stats(const round& r) {
  chain_stats out;
  const auto depth = detail::interaction_depths(r);
  for (const auto d : depth) {
    out.chain_size = std::max(out.chain_size, d);
  }
  out.path_edges = out.chain_size == 0 ? 0 : out.chain_size - 1;
  out.level_count = out.chain_size;
  for (const auto d : agent_degrees(r)) {
    out.max_agent_degree = std::max<std::uint64_t>(out.max_agent_degree, d);
  }
  return out;
}

// Quadratic reference implementation with the same contract as
// compute_chain_stats: materializes every DAG edge from the shared-agent
// rule and runs the longest-path recurrence over the explicit edge list.
inline chain_stats brute_force_chain_stats(const round& r) {
  const std::size_t t = r.interactions.size();
  if (t > 10000) {
    throw std::invalid_argument("brute-force chain oracle limited to rounds of at most 10^4 interactions");
  }

  struct dag_edge {
    std::size_t from;
    std::size_t to;
  };
  std::vector<dag_edge> edges;
  for (std::size_t u = 0; u < t; ++u) {
    for (std::size_t v = 0; v < u; ++v) {
      if (r.interactions[v].shares_agent(r.interactions[u])) {
        edges.push_back(dag_edge{v, u});
      }
    }
  }

  std::vector<std::uint64_t> depth(t, t ? 1 : 0);
  for (const auto& e : edges) {  // edges are emitted in ascending 'to' order
    depth[e.to] = std::max(depth[e.to], depth[e.from] + 1);
  }

  chain_stats out;
  for (std::size_t u = 0; u < t; ++u) {
    out.chain_size = std::max(out.chain_size, depth[u]);
  }
  out.path_edges = out.chain_size == 0 ? 0 : out.chain_size - 1;
  out.level_count = out.chain_size;
  for (const auto d : agent_degrees(r)) {
    out.max_agent_degree = std::max<std::uint64_t>(out.max_agent_degree, d);
  }
  return out;
}

inline level_decomposition compute_level_decomposition(const round& r) {
  level_decomposition out;
  const auto depth = detail::interaction_depths(r);
  out.level_of.resize(depth.size());
  std::uint64_t level_count = 0;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    out.level_of[i] = depth[i] - 1;
    level_count = std::max(level_count, depth[i]);
  }
  out.levels.resize(level_count);
  for (std::size_t i = 0; i < depth.size(); ++i) {
    out.levels[depth[i] - 1].push_back(r.interactions[i].label);
  }
  return out;
}

// True iff the round contains a monotone interference path of k interactions.
inline bool has_monotone_path(const round& r, std::uint64_t k) {
  if (k < 1) {
    throw std::invalid_argument("path length k must be >= 1");
  }
  return compute_chain_stats(r).chain_size >= k;
}

// Witness for the chain: labels of one longest monotone interference path,
// strictly increasing, consecutive interactions sharing an agent. Ties are
// broken toward the smaller predecessor label so the witness is unique.
inline std::vector<std::uint64_t> monotone_chain_witness(const round& r) {
  const std::size_t t = r.interactions.size();
  struct agent_best {
    std::uint64_t depth = 0;
    std::size_t index = 0;  // interaction index achieving it
  };
  std::vector<agent_best> best(r.n_agents);
  std::vector<std::uint64_t> depth(t, 0);
  // pred[u] = index of the chosen predecessor, or t for none
  std::vector<std::size_t> pred(t, t);

  for (std::size_t u = 0; u < t; ++u) {
    const auto& it = r.interactions[u];
    const agent_best a = best[it.initiator];
    const agent_best b = best[it.responder];
    agent_best chosen = a;
    if (b.depth > a.depth) {
      chosen = b;
    } else if (b.depth == a.depth && b.depth > 0 &&
               r.interactions[b.index].label < r.interactions[a.index].label) {
      chosen = b;
    }
    depth[u] = 1 + chosen.depth;
    pred[u] = chosen.depth > 0 ? chosen.index : t;
    best[it.initiator] = agent_best{depth[u], u};
    best[it.responder] = agent_best{depth[u], u};
  }

  std::size_t end = t;
  std::uint64_t max_depth = 0;
  for (std::size_t u = 0; u < t; ++u) {
    if (depth[u] > max_depth) {  // first hit keeps the smallest end label
      max_depth = depth[u];
      end = u;
    }
  }

  std::vector<std::uint64_t> witness;
  for (std::size_t u = end; u != t; u = pred[u]) {
    witness.push_back(r.interactions[u].label);
  }
  std::reverse(witness.begin(), witness.end());
  return witness;
}

}  // namespace popsim
