#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "popsim/dependency.hpp"
#include "popsim/model.hpp"

namespace popsim {

using state_id = std::uint32_t;

// Per-agent states, entry i is the state of agent i in [0, state_count).
using configuration = std::vector<state_id>;

// Black-box pairwise state update: delta maps (initiator_state,
// responder_state) to the two updated states. Must be total on
// [0, state_count)^2 and referentially transparent.
struct transition_function {
  std::uint32_t state_count = 0;
  std::function<std::pair<state_id, state_id>(state_id, state_id)> delta;
};

struct execution_report {
  configuration final;
  std::uint64_t parallel_steps = 0;
  std::uint64_t interactions_applied = 0;
};

namespace detail {

inline void require_configuration(const configuration& init, std::uint32_t n_agents,
                                  const transition_function& f) {
  if (f.state_count < 1 || !f.delta) {
    throw std::invalid_argument("transition function must have states and a delta");
  }
  if (init.size() != n_agents) {
    throw std::invalid_argument("configuration length does not match the population size");
  }
  for (const auto s : init) {
    if (s >= f.state_count) {
      throw std::invalid_argument("configuration state out of range");
    }
  }
}

inline void apply_interaction(const transition_function& f, configuration& states,
                              agent_id initiator, agent_id responder) {
  const auto [a, b] = f.delta(states[initiator], states[responder]);
  if (a >= f.state_count || b >= f.state_count) {
    throw std::runtime_error("transition function produced an out-of-range state");
  }
  states[initiator] = a;
  states[responder] = b;
}

}  // namespace detail

// Applies every interaction in ascending label order; one parallel step per
// interaction.
inline execution_report execute_sequential(const round& r, const transition_function& f,
                                           const configuration& init) {
  detail::require_configuration(init, r.n_agents, f);
  execution_report report;
  report.final = init;
  for (const auto& it : r.interactions) {
    detail::apply_interaction(f, report.final, it.initiator, it.responder);
  }
  report.parallel_steps = r.length();
  report.interactions_applied = r.length();
  return report;
}

// Processes the level decomposition one level per parallel step. Same-level
// interactions are agent-disjoint, so applying them in ascending label order
// is equivalent to applying them simultaneously and the final configuration
// matches execute_sequential exactly.
inline execution_report execute_by_levels(const round& r, const transition_function& f,
                                          const configuration& init) {
  detail::require_configuration(init, r.n_agents, f);
  const auto decomposition = compute_level_decomposition(r);

  execution_report report;
  report.final = init;
  std::vector<std::uint64_t> claimed(r.n_agents, 0);  // level+1 stamp per agent
  for (std::size_t level = 0; level < decomposition.levels.size(); ++level) {
    for (const auto label : decomposition.levels[level]) {
      const auto& it = r.interactions[label - 1];
      if (claimed[it.initiator] == level + 1 || claimed[it.responder] == level + 1) {
        throw std::logic_error("scheduler invariant violated: level is not agent-disjoint");
      }
      claimed[it.initiator] = level + 1;
      claimed[it.responder] = level + 1;
      detail::apply_interaction(f, report.final, it.initiator, it.responder);
      ++report.interactions_applied;
    }
  }
  report.parallel_steps = decomposition.levels.size();
  return report;
}

// Applies each matching of the schedule as one parallel step. Pairs are
// unordered; the smaller agent index takes the initiator role so runs are
// reproducible.
inline execution_report execute_k_parallel(const k_parallel_schedule& schedule,
                                           const transition_function& f,
                                           const configuration& init) {
  detail::require_configuration(init, schedule.n_agents, f);
  execution_report report;
  report.final = init;
  for (const auto& matching : schedule.steps) {
    for (const auto& [a, b] : matching) {
      detail::apply_interaction(f, report.final, std::min(a, b), std::max(a, b));
      ++report.interactions_applied;
    }
  }
  report.parallel_steps = schedule.steps.size();
  return report;
}

// Named demonstration protocols used as test loads. All use 2 states.
//   identity:         (a, b) -> (a, b)
//   epidemic:         (a, b) -> (a|b, a|b), state 1 = infected
//   leader-collision: (1, 1) -> (1, 0), otherwise unchanged; state 1 = leader
inline const std::map<std::string, transition_function>& demo_protocols() {
  static const std::map<std::string, transition_function> catalog = {
      {"identity",
       {2, [](state_id a, state_id b) { return std::pair{a, b}; }}},
      {"epidemic",
       {2, [](state_id a, state_id b) {
          const state_id merged = a | b;
          return std::pair{merged, merged};
        }}},
      {"leader-collision",
       {2, [](state_id a, state_id b) {
          if (a == 1 && b == 1) {
            return std::pair<state_id, state_id>{1, 0};
          }
          return std::pair{a, b};
        }}},
  };
  return catalog;
}

inline const transition_function& demo_protocol(const std::string& name) {
  const auto& catalog = demo_protocols();
  const auto it = catalog.find(name);
  if (it == catalog.end()) {
    throw std::out_of_range("unknown demo protocol: " + name);
  }
  return it->second;
}

}  // namespace popsim
