#include <sstream>
#include <string>

#include "doctest.h"
#include "popsim/io.hpp"

using namespace popsim;

TEST_CASE("round JSONL dump is a header line plus one line per interaction") {
  std::ostringstream os;
  write_round_jsonl(os, adversarial_chain_round(2), 7, 0);
  CHECK(os.str() ==
        "{\"n\":2,\"T\":2,\"seed\":7,\"stream\":0}\n"
        "{\"t\":1,\"a\":0,\"b\":1}\n"
        "{\"t\":2,\"a\":1,\"b\":0}\n");
}

TEST_CASE("round CSV dump") {
  std::ostringstream os;
  write_round_csv(os, adversarial_chain_round(3));
  CHECK(os.str() == "t,a,b\n1,0,1\n2,1,2\n3,2,0\n");
}

TEST_CASE("chain stats serialize flat") {
  const chain_stats stats{4, 3, 4, 2};
  CHECK(to_json(stats).dump() ==
        "{\"chain_size\":4,\"path_edges\":3,\"level_count\":4,\"max_agent_degree\":2}");
}

TEST_CASE("configurations serialize as integer arrays") {
  CHECK(to_json(configuration{0, 1, 0}).dump() == "[0,1,0]");
  CHECK(to_json(configuration{}).dump() == "[]");
}

TEST_CASE("execution reports carry a state histogram") {
  execution_report report;
  report.final = {1, 0, 1, 1};
  report.parallel_steps = 2;
  report.interactions_applied = 5;
  CHECK(to_json(report).dump() ==
        "{\"parallel_steps\":2,\"interactions_applied\":5,"
        "\"final_histogram\":{\"0\":1,\"1\":3}}");
}

TEST_CASE("tail bound and bins result mirror their fields") {
  tail_bound tb;
  tb.n = 100;
  tb.c = 1.0;
  tb.k = 12;
  tb.bound_value = 0.5;
  tb.trials = 10;
  tb.exceedances = 1;
  tb.empirical_freq = 0.1;
  CHECK(to_json(tb).dump() ==
        "{\"n\":100,\"c\":1.0,\"k\":12,\"bound_value\":0.5,\"trials\":10,"
        "\"exceedances\":1,\"empirical_freq\":0.1}");

  bins_result br;
  br.n_bins = 2;
  br.n_balls = 4;
  br.trials = 16;
  br.mean_max_load = 2.75;
  br.predicted = 1.5;
  CHECK(to_json(br).dump() ==
        "{\"n_bins\":2,\"n_balls\":4,\"trials\":16,\"mean_max_load\":2.75,"
        "\"predicted\":1.5}");
}

TEST_CASE("sweep rows serialize to the fixed CSV schema") {
  CHECK(std::string(sweep_csv_header) ==
        "n,trials,mean_chain,std_chain,ci95,mean_max_degree,ratio,seed");
  sweep_result row;
  row.n = 1024;
  row.trials = 200;
  row.mean_chain = 7.5;
  row.std_chain = 1.25;
  row.ci95 = 0.25;
  row.mean_max_degree = 5.5;
  row.ratio = 2.0;
  std::ostringstream os;
  write_sweep_csv_row(os, row, 7);
  CHECK(os.str() == "1024,200,7.5,1.25,0.25,5.5,2,7\n");

  CHECK(to_json(row, 7).dump() ==
        "{\"n\":1024,\"trials\":200,\"mean_chain\":7.5,\"std_chain\":1.25,"
        "\"ci95\":0.25,\"mean_max_degree\":5.5,\"ratio\":2.0,\"seed\":7}");
}

TEST_CASE("numbers render without locale effects") {
  CHECK(number_str(0.5) == "0.5");
  CHECK(number_str(2.0) == "2");
  CHECK(number_str(-1.25) == "-1.25");
}
