// Command-line front end: every subcommand is a pure function of its flags,
// so repeated invocations with the same flags (any --jobs) are byte-identical.
// Exit codes: 0 success, 1 usage or domain error, 2 verification failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "popsim/analysis.hpp"
#include "popsim/engine.hpp"
#include "popsim/io.hpp"
#include "popsim/model.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_verify_failed = 2;

struct output_target {
  std::ofstream file;
  std::ostream* os = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) {
      return;
    }
    file.open(path, std::ios::binary);
    if (!file) {
      throw std::runtime_error("cannot open output file: " + path);
    }
    os = &file;
  }
};

// Canonical start states for the demo protocols: epidemic starts with agent 0
// infected, leader-collision with every agent a leader, identity all zero.
popsim::configuration demo_init(const std::string& protocol, std::uint32_t n) {
  if (protocol == "epidemic") {
    popsim::configuration config(n, 0);
    config[0] = 1;
    return config;
  }
  if (protocol == "leader-collision") {
    return popsim::configuration(n, 1);
  }
  return popsim::configuration(n, 0);
}

struct schedule_choice {
  enum class kind { sequential, levels, kparallel } mode = kind::sequential;
  std::uint32_t k = 0;
};

schedule_choice parse_schedule(const std::string& text) {
  if (text == "sequential") {
    return {schedule_choice::kind::sequential, 0};
  }
  if (text == "levels") {
    return {schedule_choice::kind::levels, 0};
  }
  const std::string prefix = "kparallel:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("schedule kparallel:K needs a positive integer K");
    }
    const unsigned long k = std::stoul(digits);
    if (k < 1) {
      throw std::invalid_argument("schedule kparallel:K needs a positive integer K");
    }
    return {schedule_choice::kind::kparallel, static_cast<std::uint32_t>(k)};
  }
  throw std::invalid_argument("schedule must be sequential, levels, or kparallel:K");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulate population-protocol rounds and measure their true parallel cost"};
  app.require_subcommand(1);

  const auto format_check = CLI::IsMember({"csv", "jsonl"});
  const auto jobs_check = CLI::Range(1u, 1024u);

  // sample
  std::uint32_t sample_n = 0;
  std::uint64_t sample_t = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_format = "jsonl";
  std::string sample_out;
  unsigned sample_jobs = 1;
  auto* sample_cmd = app.add_subcommand("sample", "draw one uniform random round");
  sample_cmd->add_option("--n", sample_n, "population size")->required();
  sample_cmd->add_option("--t", sample_t, "round length (default: n)");
  sample_cmd->add_option("--seed", sample_seed, "master seed")->required();
  sample_cmd->add_option("--format", sample_format, "output format")->check(format_check);
  sample_cmd->add_option("--out", sample_out, "output path (default: stdout)");
  sample_cmd->add_option("--jobs", sample_jobs, "worker pool size")->check(jobs_check);

  // depth
  std::uint32_t depth_n = 0;
  std::uint64_t depth_trials = 200;
  std::uint64_t depth_seed = 0;
  std::string depth_format = "csv";
  std::string depth_out;
  unsigned depth_jobs = 1;
  auto* depth_cmd =
      app.add_subcommand("depth", "estimate the expected chain size at one population size");
  depth_cmd->add_option("--n", depth_n, "population size")->required();
  depth_cmd->add_option("--trials", depth_trials, "number of sampled rounds");
  depth_cmd->add_option("--seed", depth_seed, "master seed")->required();
  depth_cmd->add_option("--format", depth_format, "output format")->check(format_check);
  depth_cmd->add_option("--out", depth_out, "output path (default: stdout)");
  depth_cmd->add_option("--jobs", depth_jobs, "worker pool size")->check(jobs_check);

  // sweep
  std::vector<std::uint32_t> sweep_ns;
  std::uint64_t sweep_trials = 200;
  std::uint64_t sweep_seed = 0;
  std::string sweep_format = "csv";
  std::string sweep_out;
  unsigned sweep_jobs = 1;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "estimate the expected chain size over population sizes");
  sweep_cmd->add_option("--n", sweep_ns, "population sizes (comma separated)")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--trials", sweep_trials, "number of sampled rounds per size");
  sweep_cmd->add_option("--seed", sweep_seed, "master seed")->required();
  sweep_cmd->add_option("--format", sweep_format, "output format")->check(format_check);
  sweep_cmd->add_option("--out", sweep_out, "output path (default: stdout)");
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker pool size")->check(jobs_check);

  // verify
  std::uint64_t verify_n = 0;
  double verify_c = 1.0;
  std::uint64_t verify_trials = 2000;
  std::uint64_t verify_seed = 0;
  bool verify_adversarial = false;
  std::string verify_out;
  unsigned verify_jobs = 1;
  auto* verify_cmd =
      app.add_subcommand("verify", "measure the chain tail frequency against its bound");
  verify_cmd->add_option("--n", verify_n, "population size")->required();
  verify_cmd->add_option("--c", verify_c, "tail exponent c > 0");
  verify_cmd->add_option("--trials", verify_trials, "number of sampled rounds");
  auto* verify_seed_opt = verify_cmd->add_option("--seed", verify_seed, "master seed");
  verify_cmd->add_flag("--adversarial", verify_adversarial,
                       "check the deterministic worst-case round instead of sampling");
  verify_cmd->add_option("--out", verify_out, "output path (default: stdout)");
  verify_cmd->add_option("--jobs", verify_jobs, "worker pool size")->check(jobs_check);

  // bins
  std::uint64_t bins_n = 0;
  std::uint64_t bins_trials = 100;
  std::uint64_t bins_seed = 0;
  std::string bins_out;
  unsigned bins_jobs = 1;
  auto* bins_cmd =
      app.add_subcommand("bins", "throw 2n balls into n bins and report the mean max load");
  bins_cmd->add_option("--n", bins_n, "number of bins")->required();
  bins_cmd->add_option("--trials", bins_trials, "number of trials");
  bins_cmd->add_option("--seed", bins_seed, "master seed")->required();
  bins_cmd->add_option("--out", bins_out, "output path (default: stdout)");
  bins_cmd->add_option("--jobs", bins_jobs, "worker pool size")->check(jobs_check);

  // run
  std::string run_protocol;
  std::uint32_t run_n = 0;
  std::uint64_t run_t = 0;
  std::string run_schedule = "sequential";
  std::uint64_t run_steps = 0;
  std::uint64_t run_seed = 0;
  std::string run_out;
  unsigned run_jobs = 1;
  auto* run_cmd =
      app.add_subcommand("run", "execute a demo protocol under a chosen schedule");
  run_cmd->add_option("--protocol", run_protocol, "identity | epidemic | leader-collision")
      ->required();
  run_cmd->add_option("--n", run_n, "population size")->required();
  run_cmd->add_option("--t", run_t, "round length (default: n)");
  run_cmd->add_option("--schedule", run_schedule, "sequential | levels | kparallel:K");
  auto* run_steps_opt = run_cmd->add_option("--steps", run_steps, "schedule steps (kparallel only)");
  run_cmd->add_option("--seed", run_seed, "master seed")->required();
  run_cmd->add_option("--out", run_out, "output path (default: stdout)");
  run_cmd->add_option("--jobs", run_jobs, "worker pool size")->check(jobs_check);

  // bound
  std::uint64_t bound_n = 0;
  double bound_c = 1.0;
  std::string bound_out;
  auto* bound_cmd =
      app.add_subcommand("bound", "evaluate the chain tail bound without sampling");
  bound_cmd->add_option("--n", bound_n, "population size")->required();
  bound_cmd->add_option("--c", bound_c, "tail exponent c > 0");
  bound_cmd->add_option("--out", bound_out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (sample_cmd->parsed()) {
      output_target out;
      out.open(sample_out);
      const std::uint64_t length = sample_cmd->count("--t") ? sample_t : sample_n;
      popsim::rng_stream rng(sample_seed, 0);
      const auto r = popsim::sample_round(sample_n, length, rng);
      if (sample_format == "csv") {
        popsim::write_round_csv(*out.os, r);
      } else {
        popsim::write_round_jsonl(*out.os, r, sample_seed, 0);
      }
      return exit_ok;
    }

    if (depth_cmd->parsed() || sweep_cmd->parsed()) {
      const bool is_depth = depth_cmd->parsed();
      const std::vector<std::uint32_t> ns =
          is_depth ? std::vector<std::uint32_t>{depth_n} : sweep_ns;
      const std::uint64_t trials = is_depth ? depth_trials : sweep_trials;
      const std::uint64_t seed = is_depth ? depth_seed : sweep_seed;
      const unsigned jobs = is_depth ? depth_jobs : sweep_jobs;
      const std::string format = is_depth ? depth_format : sweep_format;
      output_target out;
      out.open(is_depth ? depth_out : sweep_out);

      const auto rows = popsim::sweep_expected_chain(ns, trials, seed, jobs);
      if (format == "csv") {
        *out.os << popsim::sweep_csv_header << '\n';
        for (const auto& row : rows) {
          popsim::write_sweep_csv_row(*out.os, row, seed);
        }
      } else {
        for (const auto& row : rows) {
          *out.os << popsim::to_json(row, seed).dump() << '\n';
        }
      }
      return exit_ok;
    }

    if (verify_cmd->parsed()) {
      output_target out;
      out.open(verify_out);
      if (verify_adversarial) {
        // The cyclic worst case has a chain of all n interactions; flag it.
        const auto r = popsim::adversarial_chain_round(static_cast<std::uint32_t>(verify_n));
        const std::uint64_t k = verify_n;
        popsim::tail_bound tb;
        tb.n = verify_n;
        tb.c = verify_c;
        tb.k = k;
        tb.bound_value = popsim::chain_tail_bound(verify_n, k);
        tb.trials = 1;
        tb.exceedances = popsim::has_monotone_path(r, k) ? 1 : 0;
        tb.empirical_freq = static_cast<double>(tb.exceedances);
        *out.os << popsim::to_json(tb).dump() << '\n';
        return tb.exceedances > 0 ? exit_verify_failed : exit_ok;
      }

      if (verify_seed_opt->count() == 0) {
        std::cerr << "error: --seed is required unless --adversarial is given\n";
        return exit_usage;
      }
      const std::uint64_t k = popsim::chain_length_threshold(verify_n, verify_c);
      auto tb = popsim::tail_frequency(static_cast<std::uint32_t>(verify_n), k, verify_trials,
                                       verify_seed, verify_jobs);
      tb.c = verify_c;
      *out.os << popsim::to_json(tb).dump() << '\n';
      const double threshold =
          std::max(5.0 * std::pow(static_cast<double>(verify_n), -verify_c),
                   2.0 / static_cast<double>(verify_trials));
      return tb.empirical_freq <= threshold ? exit_ok : exit_verify_failed;
    }

    if (bins_cmd->parsed()) {
      output_target out;
      out.open(bins_out);
      const auto result = popsim::balls_bins_max_load(bins_n, bins_trials, bins_seed, bins_jobs);
      *out.os << popsim::to_json(result).dump() << '\n';
      return exit_ok;
    }

    if (run_cmd->parsed()) {
      output_target out;
      out.open(run_out);
      const auto choice = parse_schedule(run_schedule);
      if (run_steps_opt->count() > 0 && choice.mode != schedule_choice::kind::kparallel) {
        std::cerr << "error: --steps only applies to kparallel schedules\n";
        return exit_usage;
      }
      const auto& protocol = popsim::demo_protocol(run_protocol);
      const auto init = demo_init(run_protocol, run_n);
      popsim::rng_stream rng(run_seed, 0);

      popsim::execution_report report;
      if (choice.mode == schedule_choice::kind::kparallel) {
        if (run_steps_opt->count() == 0 || run_steps < 1) {
          std::cerr << "error: kparallel schedules need --steps >= 1\n";
          return exit_usage;
        }
        const auto schedule =
            popsim::sample_k_parallel_schedule(run_n, choice.k, run_steps, rng);
        report = popsim::execute_k_parallel(schedule, protocol, init);
      } else {
        const std::uint64_t length = run_cmd->count("--t") ? run_t : run_n;
        const auto r = popsim::sample_round(run_n, length, rng);
        report = choice.mode == schedule_choice::kind::levels
                     ? popsim::execute_by_levels(r, protocol, init)
                     : popsim::execute_sequential(r, protocol, init);
      }
      *out.os << popsim::to_json(report).dump() << '\n';
      return exit_ok;
    }

    if (bound_cmd->parsed()) {
      output_target out;
      out.open(bound_out);
      const auto tb = popsim::predict_chain_tail(bound_n, bound_c);
      *out.os << popsim::to_json(tb).dump() << '\n';
      return exit_ok;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }

  return exit_usage;
}
