// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "conchain/report.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace conchain {

namespace {

std::string trim(std::string_view s) {
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return std::string(s.substr(begin, end - begin));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= value.size(); ++i) {
    if (i == value.size() || value[i] == ',') {
      std::string item = trim(std::string_view(value).substr(start, i - start));
      if (!item.empty()) items.push_back(std::move(item));
      start = i + 1;
    }
  }
  return items;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
  throw ConfigError("config error: " + key + ": expected " + expected +
                    ", got '" + value + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    bad_value(key, value, "a non-negative integer");
  return out;
}

std::int64_t parse_i64(const std::string& key, const std::string& value) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    bad_value(key, value, "an integer");
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double out = std::stod(value, &used);
    if (used != value.size()) bad_value(key, value, "a number");
    return out;
  } catch (const std::exception&) {
    bad_value(key, value, "a number");
  }
}

TimeUs parse_seconds(const std::string& key, const std::string& value) {
  double s = parse_double(key, value);
  if (s < 0) bad_value(key, value, "a non-negative duration in seconds");
  return seconds_to_us(s);
}

struct MixKey {
  const char* suffix;
  OpKind kind;
};

constexpr MixKey kMixKeys[] = {
    {"query", OpKind::Query},
    {"deposit_checking", OpKind::DepositChecking},
    {"transact_savings", OpKind::TransactSavings},
    {"send_payment", OpKind::SendPayment},
    {"write_check", OpKind::WriteCheck},
    {"amalgamate", OpKind::Amalgamate},
};

struct CostKey {
  const char* name;
  OpKind kind;
};

constexpr CostKey kCostKeys[] = {
    {"engine.cost.query_s", OpKind::Query},
    {"engine.cost.deposit_checking_s", OpKind::DepositChecking},
    {"engine.cost.transact_savings_s", OpKind::TransactSavings},
    {"engine.cost.send_payment_s", OpKind::SendPayment},
    {"engine.cost.write_check_s", OpKind::WriteCheck},
    {"engine.cost.amalgamate_s", OpKind::Amalgamate},
};

}  // namespace

const std::vector<std::string>& config_key_names() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k = {
        "workload.n_accounts", "workload.initial_checking",
        "workload.initial_savings", "workload.n_txs", "workload.mix",
        "workload.hot_accounts", "workload.hot_probability",
        "workload.arrival_rate", "workload.amount_min", "workload.amount_max",
        "workload.seed",
        "engine.workers", "engine.scheduling_tick_s", "engine.rounds_per_tick",
        "engine.block_max_txs", "engine.block_interval_s",
        "engine.queue_ttl_s", "engine.lock_overhead_s",
        "engine.max_hold_rounds", "engine.infra_failure_prob", "engine.seed",
        "schemes",
        "sweep.knob", "sweep.values",
        "attack.scenario", "attack.intensity", "attack.target_wallets",
        "attack.seed", "attack.ddos_success_threshold",
        "output.path", "output.format",
    };
    for (const MixKey& mix : kMixKeys)
      k.push_back(std::string("workload.mix.") + mix.suffix);
    for (const CostKey& cost : kCostKeys) k.emplace_back(cost.name);
    std::sort(k.begin(), k.end());
    return k;
  }();
  return keys;
}

namespace {

std::string env_name_for(const std::string& key) {
  std::string name = "CONCHAIN_";
  for (char c : key)
    name += c == '.' ? '_' : static_cast<char>(std::toupper(
                                 static_cast<unsigned char>(c)));
  return name;
}

ExperimentConfig bind_config(std::map<std::string, std::string> raw,
                             const std::string& source_name) {
  ExperimentConfig config;

  auto take = [&raw](const std::string& key) -> std::optional<std::string> {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    std::string value = it->second;
    raw.erase(it);
    return value;
  };

  // workload
  if (auto v = take("workload.n_accounts")) config.workload.n_accounts = parse_u64("workload.n_accounts", *v);
  if (auto v = take("workload.initial_checking")) config.workload.initial_checking = parse_i64("workload.initial_checking", *v);
  if (auto v = take("workload.initial_savings")) config.workload.initial_savings = parse_i64("workload.initial_savings", *v);
  if (auto v = take("workload.n_txs")) config.workload.n_txs = parse_u64("workload.n_txs", *v);
  if (auto v = take("workload.mix")) {
    if (*v == "R") {
      config.workload.mix = OpMix::read_only();
      config.mix_name = "R";
    } else if (*v == "RW") {
      config.workload.mix = OpMix::read_write();
      config.mix_name = "RW";
    } else {
      bad_value("workload.mix", *v, "'R' or 'RW'");
    }
  }
  bool custom_mix = false;
  for (const MixKey& mix : kMixKeys) {
    std::string key = std::string("workload.mix.") + mix.suffix;
    if (auto v = take(key)) {
      if (!custom_mix) {
        config.workload.mix = OpMix{};  // start from all-zero weights
        custom_mix = true;
        config.mix_name = "custom";
      }
      double w = parse_double(key, *v);
      if (w < 0) bad_value(key, *v, "a non-negative weight");
      config.workload.mix[mix.kind] = w;
    }
  }
  if (auto v = take("workload.hot_accounts")) config.workload.hot_accounts = parse_u64("workload.hot_accounts", *v);
  if (auto v = take("workload.hot_probability")) config.workload.hot_probability = parse_double("workload.hot_probability", *v);
  if (auto v = take("workload.arrival_rate")) config.workload.arrival_rate = parse_double("workload.arrival_rate", *v);
  if (auto v = take("workload.amount_min")) config.workload.amount_min = parse_i64("workload.amount_min", *v);
  if (auto v = take("workload.amount_max")) config.workload.amount_max = parse_i64("workload.amount_max", *v);
  if (auto v = take("workload.seed")) config.workload.seed = parse_u64("workload.seed", *v);

  // engine
  if (auto v = take("engine.workers")) config.engine.workers = static_cast<std::uint32_t>(parse_u64("engine.workers", *v));
  if (auto v = take("engine.scheduling_tick_s")) config.engine.scheduling_tick_us = parse_seconds("engine.scheduling_tick_s", *v);
  if (auto v = take("engine.rounds_per_tick")) config.engine.rounds_per_tick = static_cast<std::uint32_t>(parse_u64("engine.rounds_per_tick", *v));
  if (auto v = take("engine.block_max_txs")) config.engine.block_max_txs = parse_u64("engine.block_max_txs", *v);
  if (auto v = take("engine.block_interval_s")) config.engine.block_interval_us = parse_seconds("engine.block_interval_s", *v);
  for (const CostKey& cost : kCostKeys) {
    if (auto v = take(cost.name))
      config.engine.cost.op_cost_us[static_cast<std::size_t>(cost.kind)] =
          parse_seconds(cost.name, *v);
  }
  if (auto v = take("engine.queue_ttl_s")) config.engine.queue_ttl_us = parse_seconds("engine.queue_ttl_s", *v);
  if (auto v = take("engine.lock_overhead_s")) config.engine.lock_overhead_us = parse_seconds("engine.lock_overhead_s", *v);
  if (auto v = take("engine.max_hold_rounds")) config.engine.max_hold_rounds = static_cast<std::uint32_t>(parse_u64("engine.max_hold_rounds", *v));
  if (auto v = take("engine.infra_failure_prob")) config.engine.infra_failure_prob = parse_double("engine.infra_failure_prob", *v);
  if (auto v = take("engine.seed")) config.engine.seed = parse_u64("engine.seed", *v);

  // schemes
  if (auto v = take("schemes")) {
    config.schemes.clear();
    for (const std::string& token : split_list(*v)) {
      auto scheme = scheme_from_string(token);
      if (!scheme)
        bad_value("schemes", token,
                  "one of fifo|timestamp|grouped|locking|conchain");
      config.schemes.push_back(*scheme);
    }
    if (config.schemes.empty())
      throw ConfigError("config error: schemes: at least one scheme required");
  }

  // sweep
  {
    auto knob = take("sweep.knob");
    auto values = take("sweep.values");
    if (knob.has_value() != values.has_value())
      throw ConfigError(
          "config error: sweep.knob and sweep.values must be set together");
    if (knob) {
      SweepSpec sweep;
      sweep.knob = *knob;
      if (sweep.knob != "hot_probability" && sweep.knob != "arrival_rate" &&
          sweep.knob != "intensity")
        bad_value("sweep.knob", *knob,
                  "one of hot_probability|arrival_rate|intensity");
      for (const std::string& token : split_list(*values))
        sweep.values.push_back(parse_double("sweep.values", token));
      if (sweep.values.empty())
        throw ConfigError("config error: sweep.values: list must be non-empty");
      for (double v : sweep.values) {
        if (sweep.knob == "hot_probability" && (v < 0.0 || v > 1.0))
          throw ConfigError(
              "config error: sweep.values: hot_probability values must be in "
              "[0, 1]");
        if ((sweep.knob == "arrival_rate" || sweep.knob == "intensity") && v <= 0.0)
          throw ConfigError("config error: sweep.values: " + sweep.knob +
                            " values must be positive");
      }
      config.sweep = std::move(sweep);
    }
  }

  // attack
  {
    auto scenario = take("attack.scenario");
    auto intensity = take("attack.intensity");
    auto targets = take("attack.target_wallets");
    auto seed = take("attack.seed");
    auto threshold = take("attack.ddos_success_threshold");
    if (scenario) {
      AttackConfig attack;
      auto parsed = attack_scenario_from_string(*scenario);
      if (!parsed)
        bad_value("attack.scenario", *scenario,
                  "one of double_spend|block_withholding|balance|ddos");
      attack.scenario = *parsed;
      attack.honest = config.workload;
      if (intensity) attack.intensity = parse_double("attack.intensity", *intensity);
      if (targets) attack.target_wallets = parse_u64("attack.target_wallets", *targets);
      if (seed) attack.seed = parse_u64("attack.seed", *seed);
      if (threshold)
        attack.ddos_success_threshold =
            parse_double("attack.ddos_success_threshold", *threshold);
      config.attack = std::move(attack);
    } else if (intensity || targets || seed || threshold) {
      throw ConfigError(
          "config error: attack.scenario: required when other attack.* keys "
          "are set");
    }
  }

  // output
  if (auto v = take("output.path")) config.output.path = *v;
  if (auto v = take("output.format")) {
    if (*v != "json" && *v != "csv") bad_value("output.format", *v, "json or csv");
    config.output.format = *v;
  }

  if (!raw.empty())
    throw ConfigError("config error: " + source_name + ": unknown key '" +
                      raw.begin()->first + "'");

  // Whole-config validation, surfaced with key-style diagnostics.
  try {
    validate(config.workload);
    validate(config.engine);
    if (config.attack) {
      config.attack->honest = config.workload;
      validate(*config.attack);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config error: ") + e.what());
  }
  return config;
}

}  // namespace

ExperimentConfig parse_config_text(std::string_view text,
                                   const std::string& source_name,
                                   bool apply_env) {
  std::map<std::string, std::string> raw;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line_view = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    std::string line(line_view);
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config error: " + source_name + ":" +
                        std::to_string(line_no) + ": expected 'key = value'");
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty())
      throw ConfigError("config error: " + source_name + ":" +
                        std::to_string(line_no) + ": empty key");
    raw[key] = value;  // later occurrences win
    if (pos > text.size()) break;
  }

  if (apply_env) {
    for (const std::string& key : config_key_names()) {
      if (const char* value = std::getenv(env_name_for(key).c_str()))
        raw[key] = value;
    }
  }
  return bind_config(std::move(raw), source_name);
}

ExperimentConfig parse_config_file(const std::string& path, bool apply_env) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("config error: cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path, apply_env);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

nlohmann::json metrics_to_json(const MetricsReport& report) {
  nlohmann::json j;
  j["scheme"] = report.scheme;
  j["mix"] = report.mix;
  j["workers"] = report.workers;
  j["submitted"] = report.submitted;
  j["succ"] = report.succ;
  j["fail"] = report.fail;
  j["fail_breakdown"] = report.fail_breakdown;
  j["fake_reasons"] = report.fake_reasons;
  j["mean_latency_s"] = report.mean_latency_s;
  j["tps_committed"] = report.tps_committed;
  j["success_rate"] = report.success_rate;
  j["makespan_s"] = report.makespan_s;
  j["stream_checksum"] = report.stream_checksum;
  j["chain_digest"] = report.chain_digest;
  j["blocks"] = report.blocks;
  return j;
}

MetricsReport metrics_from_json(const nlohmann::json& j) {
  MetricsReport report;
  report.scheme = j.at("scheme").get<std::string>();
  report.mix = j.at("mix").get<std::string>();
  report.workers = j.at("workers").get<std::uint32_t>();
  report.submitted = j.at("submitted").get<std::uint64_t>();
  report.succ = j.at("succ").get<std::uint64_t>();
  report.fail = j.at("fail").get<std::uint64_t>();
  report.fail_breakdown =
      j.at("fail_breakdown").get<std::map<std::string, std::uint64_t>>();
  report.fake_reasons =
      j.at("fake_reasons").get<std::map<std::string, std::uint64_t>>();
  report.mean_latency_s = j.at("mean_latency_s").get<double>();
  report.tps_committed = j.at("tps_committed").get<double>();
  report.success_rate = j.at("success_rate").get<double>();
  report.makespan_s = j.at("makespan_s").get<double>();
  report.stream_checksum = j.at("stream_checksum").get<std::uint64_t>();
  report.chain_digest = j.at("chain_digest").get<std::uint64_t>();
  report.blocks = j.at("blocks").get<std::uint64_t>();
  return report;
}

nlohmann::json defense_to_json(const DefenseReport& report) {
  nlohmann::json j;
  j["scenario"] = report.scenario;
  j["defended"] = report.defended;
  j["attacker_total"] = report.attacker_total;
  j["fake_committed"] = report.fake_committed;
  j["fake_rejected"] = report.fake_rejected;
  j["fake_expired"] = report.fake_expired;
  j["attacker_committed"] = report.attacker_committed;
  j["attacker_aborted"] = report.attacker_aborted;
  j["honest_total"] = report.honest_total;
  j["honest_committed"] = report.honest_committed;
  j["honest_success_rate"] = report.honest_success_rate;
  j["honest_mean_latency_s"] = report.honest_mean_latency_s;
  j["chain_forks"] = report.chain_forks;
  j["verdict"] = report.verdict_pass ? "pass" : "fail";
  return j;
}

DefenseReport defense_from_json(const nlohmann::json& j) {
  DefenseReport report;
  report.scenario = j.at("scenario").get<std::string>();
  report.defended = j.at("defended").get<bool>();
  report.attacker_total = j.at("attacker_total").get<std::uint64_t>();
  report.fake_committed = j.at("fake_committed").get<std::uint64_t>();
  report.fake_rejected = j.at("fake_rejected").get<std::uint64_t>();
  report.fake_expired = j.at("fake_expired").get<std::uint64_t>();
  report.attacker_committed = j.at("attacker_committed").get<std::uint64_t>();
  report.attacker_aborted = j.at("attacker_aborted").get<std::uint64_t>();
  report.honest_total = j.at("honest_total").get<std::uint64_t>();
  report.honest_committed = j.at("honest_committed").get<std::uint64_t>();
  report.honest_success_rate = j.at("honest_success_rate").get<double>();
  report.honest_mean_latency_s = j.at("honest_mean_latency_s").get<double>();
  report.chain_forks = j.at("chain_forks").get<std::uint64_t>();
  report.verdict_pass = j.at("verdict").get<std::string>() == "pass";
  return report;
}

std::string format_fixed_trim(double value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", places, value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    std::size_t last = s.find_last_not_of('0');
    if (s[last] == '.') ++last;  // keep one decimal digit
    s.erase(last + 1);
  }
  return s;
}

std::string comparison_header() {
  return "scheme,type,nodes,succ,fail,latency_s,tps,success_rate_pct";
}

std::string comparison_row(const MetricsReport& report) {
  std::ostringstream row;
  row << report.scheme << ',' << report.mix << ',' << report.workers << ','
      << report.succ << ',' << report.fail << ','
      << format_fixed_trim(report.mean_latency_s, 4) << ','
      << format_fixed_trim(report.tps_committed, 4) << ','
      << format_fixed_trim(report.success_rate * 100.0, 2);
  return row.str();
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace {

std::string write_file(const std::string& dir, const std::string& name,
                       const std::string& content) {
  std::filesystem::create_directories(dir);
  std::filesystem::path path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot write output file: " + path.string());
  out << content;
  return path.string();
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct SchemeRun {
  Scheme scheme;
  RunResult result;
};

std::vector<SchemeRun> run_all_schemes(const ExperimentConfig& config,
                                       const TxStream& stream) {
  LedgerState initial = make_initial_state(config.workload);
  std::vector<SchemeRun> runs;
  runs.reserve(config.schemes.size());
  for (Scheme scheme : config.schemes) {
    runs.push_back(SchemeRun{
        scheme, run_simulation(stream, scheme, config.engine, initial,
                               config.mix_name)});
  }
  return runs;
}

}  // namespace

std::vector<std::string> cmd_run(const ExperimentConfig& config) {
  if (config.schemes.empty())
    throw ConfigError("config error: schemes: at least one scheme required");
  TxStream stream = generate_workload(config.workload);
  std::vector<SchemeRun> runs = run_all_schemes(config, stream);

  std::vector<std::string> files;
  for (const SchemeRun& run : runs) {
    std::string base = std::string("run_") + to_string(run.scheme);
    if (config.output.format == "csv") {
      std::string csv = comparison_header() + "\n" +
                        comparison_row(run.result.report) + "\n";
      files.push_back(write_file(config.output.path, base + ".csv", csv));
    } else {
      files.push_back(write_file(config.output.path, base + ".json",
                                 json_text(metrics_to_json(run.result.report))));
    }
    if (config.event_log)
      files.push_back(write_file(config.output.path, "events_" +
                                     std::string(to_string(run.scheme)) + ".log",
                                 export_event_log(run.result.events)));
  }
  return files;
}

std::vector<std::string> cmd_compare(const ExperimentConfig& config) {
  if (config.schemes.size() < 2)
    throw ConfigError(
        "config error: schemes: compare requires at least two schemes");
  TxStream stream = generate_workload(config.workload);
  std::vector<SchemeRun> runs = run_all_schemes(config, stream);

  std::ostringstream csv;
  csv << comparison_header() << '\n';
  nlohmann::json meta;
  meta["mix"] = config.mix_name;
  meta["workers"] = config.engine.workers;
  meta["stream_checksum"] = stream_checksum(stream);
  nlohmann::json digests;
  for (const SchemeRun& run : runs) {
    csv << comparison_row(run.result.report) << '\n';
    digests[to_string(run.scheme)] = run.result.report.chain_digest;
  }
  meta["chain_digests"] = digests;

  std::vector<std::string> files;
  files.push_back(write_file(config.output.path, "compare.csv", csv.str()));
  files.push_back(
      write_file(config.output.path, "compare_meta.json", json_text(meta)));
  return files;
}

std::vector<std::string> cmd_sweep(const ExperimentConfig& config) {
  if (!config.sweep)
    throw ConfigError("config error: sweep.knob: required for the sweep command");
  const SweepSpec& sweep = *config.sweep;
  if (sweep.knob == "intensity" && !config.attack)
    throw ConfigError(
        "config error: attack.scenario: required for an intensity sweep");

  std::ostringstream csv;
  csv << "knob_value,scheme,contention_index,succ,fail,mean_latency_s,tps\n";
  nlohmann::json meta;
  meta["knob"] = sweep.knob;
  nlohmann::json checksums = nlohmann::json::array();

  auto emit_row = [&csv](double value, const std::string& scheme,
                         double contention, const MetricsReport& report) {
    csv << format_fixed_trim(value, 4) << ',' << scheme << ','
        << format_fixed_trim(contention, 4) << ',' << report.succ << ','
        << report.fail << ',' << format_fixed_trim(report.mean_latency_s, 4)
        << ',' << format_fixed_trim(report.tps_committed, 4) << '\n';
  };

  for (double value : sweep.values) {
    if (sweep.knob == "intensity") {
      AttackConfig attack = *config.attack;
      attack.intensity = value;
      AttackArms arms = run_attack(attack, config.engine);
      double contention =
          arms.stream.size() >= 2 ? contention_index(arms.stream) : 0.0;
      emit_row(value, "conchain", contention, arms.defended.report);
      emit_row(value, "fifo", contention, arms.undefended.report);
      checksums.push_back(stream_checksum(arms.stream));
    } else {
      WorkloadConfig workload = config.workload;
      if (sweep.knob == "hot_probability") workload.hot_probability = value;
      if (sweep.knob == "arrival_rate") workload.arrival_rate = value;
      TxStream stream = generate_workload(workload);
      double contention = stream.size() >= 2 ? contention_index(stream) : 0.0;
      LedgerState initial = make_initial_state(workload);
      for (Scheme scheme : config.schemes) {
        RunResult result = run_simulation(stream, scheme, config.engine,
                                          initial, config.mix_name);
        emit_row(value, to_string(scheme), contention, result.report);
      }
      checksums.push_back(stream_checksum(stream));
    }
  }
  meta["stream_checksums"] = checksums;

  std::vector<std::string> files;
  files.push_back(write_file(config.output.path, "sweep.csv", csv.str()));
  files.push_back(
      write_file(config.output.path, "sweep_meta.json", json_text(meta)));
  return files;
}

std::vector<std::string> cmd_attack(const ExperimentConfig& config,
                                    std::string* verdict_line) {
  if (!config.attack)
    throw ConfigError(
        "config error: attack.scenario: required for the attack command");
  AttackArms arms = run_attack(*config.attack, config.engine);
  std::string scenario = to_string(config.attack->scenario);
  if (verdict_line != nullptr) {
    std::ostringstream line;
    line << "scenario=" << scenario << " defended="
         << (arms.defended_report.verdict_pass ? "pass" : "fail")
         << " honest_success="
         << format_fixed_trim(arms.defended_report.honest_success_rate, 4)
         << " undefended_honest_success="
         << format_fixed_trim(arms.undefended_report.honest_success_rate, 4);
    *verdict_line = line.str();
  }

  auto arm_json = [&arms](const DefenseReport& defense,
                          const RunResult& run) {
    nlohmann::json j;
    j["defense"] = defense_to_json(defense);
    j["metrics"] = metrics_to_json(run.report);
    j["stream_checksum"] = stream_checksum(arms.stream);
    return j;
  };

  std::vector<std::string> files;
  files.push_back(write_file(config.output.path,
                             "attack_" + scenario + "_defended.json",
                             json_text(arm_json(arms.defended_report,
                                                arms.defended))));
  files.push_back(write_file(config.output.path,
                             "attack_" + scenario + "_undefended.json",
                             json_text(arm_json(arms.undefended_report,
                                                arms.undefended))));
  if (config.event_log) {
    files.push_back(write_file(config.output.path,
                               "attack_" + scenario + "_defended_events.log",
                               export_event_log(arms.defended.events)));
    files.push_back(write_file(config.output.path,
                               "attack_" + scenario + "_undefended_events.log",
                               export_event_log(arms.undefended.events)));
  }
  return files;
}

}  // namespace conchain
