// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "conchain/report.hpp"

using namespace conchain;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Small, fast experiment used by the command smoke tests.
std::string small_config_text(const std::string& out_dir) {
  return "workload.n_accounts = 80\n"
         "workload.hot_accounts = 4\n"
         "workload.n_txs = 300\n"
         "workload.mix = RW\n"
         "workload.seed = 9\n"
         "engine.workers = 4\n"
         "engine.seed = 9\n"
         "schemes = conchain, fifo\n"
         "output.path = " + out_dir + "\n";
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("conchain_test_" + name);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str() const { return path.string(); }
};

}  // namespace

TEST_CASE("fixed point formatting trims trailing zeros") {
  CHECK(format_fixed_trim(0.01, 4) == "0.01");
  CHECK(format_fixed_trim(132.5, 4) == "132.5");
  CHECK(format_fixed_trim(99.74, 2) == "99.74");
  CHECK(format_fixed_trim(0.0, 4) == "0.0");
  CHECK(format_fixed_trim(100.0, 2) == "100.0");
  CHECK(format_fixed_trim(2.6301, 4) == "2.6301");
}

TEST_CASE("comparison row renders the reference fixture") {
  MetricsReport report;
  report.scheme = "conchain";
  report.mix = "R";
  report.workers = 4;
  report.submitted = 10000;
  report.succ = 9974;
  report.fail = 26;
  report.mean_latency_s = 0.01;
  report.tps_committed = 132.5;
  report.success_rate = 0.9974;
  CHECK(comparison_row(report) == "conchain,R,4,9974,26,0.01,132.5,99.74");
  CHECK(comparison_header() ==
        "scheme,type,nodes,succ,fail,latency_s,tps,success_rate_pct");
}

TEST_CASE("config parsing") {
  SUBCASE("defaults plus overrides") {
    ExperimentConfig config = parse_config_text(
        "# comment line\n"
        "workload.n_txs = 123\n"
        "workload.mix = R\n"
        "engine.workers = 8\n"
        "schemes = fifo, conchain\n",
        "inline", /*apply_env=*/false);
    CHECK(config.workload.n_txs == 123);
    CHECK(config.mix_name == "R");
    CHECK(config.engine.workers == 8);
    CHECK(config.schemes ==
          std::vector<Scheme>{Scheme::Fifo, Scheme::Conchain});
  }
  SUBCASE("custom mix weights") {
    ExperimentConfig config = parse_config_text(
        "workload.mix.query = 0.5\n"
        "workload.mix.send_payment = 0.5\n",
        "inline", false);
    CHECK(config.mix_name == "custom");
    CHECK(config.workload.mix[OpKind::Query] == 0.5);
    CHECK(config.workload.mix[OpKind::Amalgamate] == 0.0);
  }
  SUBCASE("unknown keys are named") {
    CHECK_THROWS_WITH_AS(parse_config_text("workload.n_tsx = 12\n", "inline", false),
                         doctest::Contains("workload.n_tsx"), ConfigError);
  }
  SUBCASE("malformed values are named") {
    CHECK_THROWS_WITH_AS(parse_config_text("workload.n_txs = many\n", "inline", false),
                         doctest::Contains("workload.n_txs"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("engine.workers = 0\n", "inline", false),
                         doctest::Contains("engine.workers"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config_text("schemes = fifo, warp\n", "inline", false),
        doctest::Contains("schemes"), ConfigError);
  }
  SUBCASE("sweep validation") {
    ExperimentConfig ok = parse_config_text(
        "sweep.knob = hot_probability\nsweep.values = 0, 0.5, 1\n", "inline",
        false);
    REQUIRE(ok.sweep.has_value());
    CHECK(ok.sweep->values == std::vector<double>{0.0, 0.5, 1.0});
    CHECK_THROWS_WITH_AS(
        parse_config_text("sweep.knob = hot_probability\nsweep.values = 1.5\n",
                          "inline", false),
        doctest::Contains("sweep.values"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config_text("sweep.knob = gravity\nsweep.values = 1\n", "inline",
                          false),
        doctest::Contains("sweep.knob"), ConfigError);
    CHECK_THROWS_WITH_AS(
        parse_config_text("sweep.values = 1\n", "inline", false),
        doctest::Contains("sweep"), ConfigError);
  }
  SUBCASE("attack keys require a scenario") {
    CHECK_THROWS_WITH_AS(
        parse_config_text("attack.intensity = 2\n", "inline", false),
        doctest::Contains("attack.scenario"), ConfigError);
    ExperimentConfig config = parse_config_text(
        "attack.scenario = ddos\nattack.intensity = 2\n", "inline", false);
    REQUIRE(config.attack.has_value());
    CHECK(config.attack->intensity == 2.0);
  }
  SUBCASE("environment variables override file values") {
    setenv("CONCHAIN_WORKLOAD_N_TXS", "777", 1);
    ExperimentConfig config =
        parse_config_text("workload.n_txs = 5\n", "inline", true);
    unsetenv("CONCHAIN_WORKLOAD_N_TXS");
    CHECK(config.workload.n_txs == 777);
  }
}

TEST_CASE("json report round trips") {
  MetricsReport metrics;
  metrics.scheme = "conchain";
  metrics.mix = "RW";
  metrics.workers = 4;
  metrics.submitted = 9000;
  metrics.succ = 8540;
  metrics.fail = 460;
  metrics.fail_breakdown["aborted_insufficient_funds"] = 460;
  metrics.mean_latency_s = 2.63;
  metrics.tps_committed = 29.9;
  metrics.success_rate = 8540.0 / 9000.0;
  metrics.makespan_s = 285.6187;
  metrics.stream_checksum = 0xFEEDFACEULL << 32 | 0x1234;
  metrics.chain_digest = 12345678901234567ULL;
  metrics.blocks = 19;
  CHECK(metrics_from_json(metrics_to_json(metrics)) == metrics);

  DefenseReport defense;
  defense.scenario = "ddos";
  defense.defended = true;
  defense.attacker_total = 100;
  defense.fake_rejected = 60;
  defense.fake_expired = 30;
  defense.attacker_committed = 8;
  defense.attacker_aborted = 2;
  defense.honest_total = 500;
  defense.honest_committed = 480;
  defense.honest_success_rate = 0.96;
  defense.honest_mean_latency_s = 0.4;
  defense.verdict_pass = true;
  CHECK(defense_from_json(defense_to_json(defense)) == defense);
}

TEST_CASE("cmd_run writes one report per scheme over one stream") {
  TempDir dir("run");
  ExperimentConfig config =
      parse_config_text(small_config_text(dir.str()), "inline", false);
  std::vector<std::string> files = cmd_run(config);
  REQUIRE(files.size() == 2);

  auto a = nlohmann::json::parse(read_file(files[0]));
  auto b = nlohmann::json::parse(read_file(files[1]));
  CHECK(a.at("scheme") == "conchain");
  CHECK(b.at("scheme") == "fifo");
  // Cross-scheme fairness: both consumed the byte-identical stream.
  CHECK(a.at("stream_checksum") == b.at("stream_checksum"));
  MetricsReport parsed = metrics_from_json(a);
  CHECK(parsed.submitted == 300);
}

TEST_CASE("cmd_run csv output renders comparison rows") {
  TempDir dir("runcsv");
  ExperimentConfig config =
      parse_config_text(small_config_text(dir.str()), "inline", false);
  config.output.format = "csv";
  config.schemes = {Scheme::Fifo};
  std::vector<std::string> files = cmd_run(config);
  REQUIRE(files.size() == 1);
  std::string csv = read_file(files[0]);
  CHECK(csv.rfind(comparison_header(), 0) == 0);
  CHECK(csv.find("\nfifo,RW,4,") != std::string::npos);
}

TEST_CASE("cmd_compare emits a deterministic table") {
  TempDir dir("cmp1");
  ExperimentConfig config =
      parse_config_text(small_config_text(dir.str()), "inline", false);
  std::vector<std::string> files = cmd_compare(config);
  std::string csv = read_file(files[0]);
  CHECK(csv.rfind("scheme,type,nodes,", 0) == 0);
  CHECK(csv.find("\nconchain,RW,4,") != std::string::npos);
  CHECK(csv.find("\nfifo,RW,4,") != std::string::npos);

  TempDir dir2("cmp2");
  ExperimentConfig again =
      parse_config_text(small_config_text(dir2.str()), "inline", false);
  std::vector<std::string> files2 = cmd_compare(again);
  CHECK(read_file(files2[0]) == csv);
  CHECK(read_file(files2[1]) == read_file(files[1]));

  ExperimentConfig single = config;
  single.schemes = {Scheme::Conchain};
  CHECK_THROWS_WITH_AS(cmd_compare(single), doctest::Contains("schemes"),
                       ConfigError);
}

TEST_CASE("cmd_sweep emits one row per knob value and scheme") {
  TempDir dir("sweep");
  ExperimentConfig config = parse_config_text(
      small_config_text(dir.str()) +
          "sweep.knob = hot_probability\nsweep.values = 0, 0.5, 1\n",
      "inline", false);
  std::vector<std::string> files = cmd_sweep(config);
  std::string csv = read_file(files[0]);
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == 1 + 3 * 2);  // header + values x schemes
  // Rows are ordered by (knob value, scheme order in config).
  CHECK(csv.find("0,conchain") < csv.find("0,fifo"));
  CHECK(csv.find("0,fifo") < csv.find("0.5,conchain"));

  ExperimentConfig no_sweep =
      parse_config_text(small_config_text(dir.str()), "inline", false);
  CHECK_THROWS_WITH_AS(cmd_sweep(no_sweep), doctest::Contains("sweep"),
                       ConfigError);
}

TEST_CASE("cmd_sweep over attack intensity runs both arms per value") {
  TempDir dir("sweepint");
  ExperimentConfig config = parse_config_text(
      "workload.n_accounts = 80\n"
      "workload.hot_accounts = 4\n"
      "workload.n_txs = 150\n"
      "workload.seed = 5\n"
      "attack.scenario = block_withholding\n"
      "sweep.knob = intensity\n"
      "sweep.values = 1, 2\n"
      "output.path = " + dir.str() + "\n",
      "inline", false);
  std::vector<std::string> files = cmd_sweep(config);
  std::string csv = read_file(files[0]);
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == 1 + 2 * 2);  // header + values x (defended, undefended)
  CHECK(csv.find("1.0,conchain") != std::string::npos);
  CHECK(csv.find("2.0,fifo") != std::string::npos);

  // An intensity sweep without an attack section is a config error.
  ExperimentConfig missing = parse_config_text(
      "sweep.knob = intensity\nsweep.values = 1\n", "inline", false);
  CHECK_THROWS_WITH_AS(cmd_sweep(missing), doctest::Contains("attack"),
                       ConfigError);
}

TEST_CASE("cmd_attack writes paired reports sharing a stream") {
  TempDir dir("attack");
  ExperimentConfig config = parse_config_text(
      "workload.n_accounts = 80\n"
      "workload.hot_accounts = 4\n"
      "workload.n_txs = 200\n"
      "workload.seed = 3\n"
      "attack.scenario = double_spend\n"
      "attack.intensity = 1\n"
      "output.path = " + dir.str() + "\n",
      "inline", false);
  std::string verdict;
  std::vector<std::string> files = cmd_attack(config, &verdict);
  REQUIRE(files.size() == 2);
  auto defended = nlohmann::json::parse(read_file(files[0]));
  auto undefended = nlohmann::json::parse(read_file(files[1]));
  CHECK(defended.at("defense").at("defended") == true);
  CHECK(undefended.at("defense").at("defended") == false);
  CHECK(defended.at("stream_checksum") == undefended.at("stream_checksum"));
  CHECK(verdict.find("scenario=double_spend") != std::string::npos);
  DefenseReport parsed = defense_from_json(defended.at("defense"));
  CHECK(parsed.scenario == "double_spend");

  ExperimentConfig no_attack =
      parse_config_text(small_config_text(dir.str()), "inline", false);
  CHECK_THROWS_WITH_AS(cmd_attack(no_attack), doctest::Contains("attack"),
                       ConfigError);
}
