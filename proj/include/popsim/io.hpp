#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "json.hpp"
#include "popsim/analysis.hpp"
#include "popsim/dependency.hpp"
#include "popsim/engine.hpp"
#include "popsim/model.hpp"

namespace popsim {

// Shortest round-trip decimal form, locale-independent.
inline std::string number_str(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// JSON-lines round dump: a header object followed by one object per
// interaction, in label order.
inline void write_round_jsonl(std::ostream& os, const round& r, std::uint64_t seed,
                              std::uint64_t stream) {
  os << "{\"n\":" << r.n_agents << ",\"T\":" << r.length() << ",\"seed\":" << seed
     << ",\"stream\":" << stream << "}\n";
  for (const auto& it : r.interactions) {
    os << "{\"t\":" << it.label << ",\"a\":" << it.initiator << ",\"b\":" << it.responder
       << "}\n";
  }
}

inline void write_round_csv(std::ostream& os, const round& r) {
  os << "t,a,b\n";
  for (const auto& it : r.interactions) {
    os << it.label << ',' << it.initiator << ',' << it.responder << '\n';
  }
}

inline nlohmann::ordered_json to_json(const chain_stats& stats) {
  return {{"chain_size", stats.chain_size},
          {"path_edges", stats.path_edges},
          {"level_count", stats.level_count},
          {"max_agent_degree", stats.max_agent_degree}};
}

inline nlohmann::ordered_json to_json(const configuration& config) {
  return nlohmann::ordered_json(config);
}

inline nlohmann::ordered_json to_json(const execution_report& report) {
  std::map<state_id, std::uint64_t> histogram;
  for (const auto s : report.final) {
    ++histogram[s];
  }
  nlohmann::ordered_json hist_json = nlohmann::ordered_json::object();
  for (const auto& [state, count] : histogram) {
    hist_json[std::to_string(state)] = count;
  }
  return {{"parallel_steps", report.parallel_steps},
          {"interactions_applied", report.interactions_applied},
          {"final_histogram", hist_json}};
}

inline nlohmann::ordered_json to_json(const tail_bound& tb) {
  return {{"n", tb.n},
          {"c", tb.c},
          {"k", tb.k},
          {"bound_value", tb.bound_value},
          {"trials", tb.trials},
          {"exceedances", tb.exceedances},
          {"empirical_freq", tb.empirical_freq}};
}

inline nlohmann::ordered_json to_json(const bins_result& br) {
  return {{"n_bins", br.n_bins},
          {"n_balls", br.n_balls},
          {"trials", br.trials},
          {"mean_max_load", br.mean_max_load},
          {"predicted", br.predicted}};
}

inline constexpr const char* sweep_csv_header =
    "n,trials,mean_chain,std_chain,ci95,mean_max_degree,ratio,seed";

inline void write_sweep_csv_row(std::ostream& os, const sweep_result& row,
                                std::uint64_t seed) {
  os << row.n << ',' << row.trials << ',' << number_str(row.mean_chain) << ','
     << number_str(row.std_chain) << ',' << number_str(row.ci95) << ','
     << number_str(row.mean_max_degree) << ',' << number_str(row.ratio) << ',' << seed
     << '\n';
}

inline nlohmann::ordered_json to_json(const sweep_result& row, std::uint64_t seed) {
  return {{"n", row.n},
          {"trials", row.trials},
          {"mean_chain", row.mean_chain},
          {"std_chain", row.std_chain},
          {"ci95", row.ci95},
          {"mean_max_degree", row.mean_max_degree},
          {"ratio", row.ratio},
          {"seed", seed}};
}

}  // namespace popsim
