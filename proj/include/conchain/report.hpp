// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "conchain/attack.hpp"
#include "conchain/engine.hpp"

namespace conchain {

/// Config parse/validation failure; the message always names the
/// offending key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message)
      : std::runtime_error(message) {}
};

struct SweepSpec {
  std::string knob;  // hot_probability | arrival_rate | intensity
  std::vector<double> values;
};

struct OutputSpec {
  std::string path = ".";
  std::string format = "json";  // json | csv
};

struct ExperimentConfig {
  WorkloadConfig workload;
  EngineConfig engine;
  std::vector<Scheme> schemes{Scheme::Conchain};
  std::string mix_name = "RW";
  std::optional<SweepSpec> sweep;
  std::optional<AttackConfig> attack;
  OutputSpec output;
  bool event_log = false;
};

/// Flat `key = value` format with dotted sections and '#' comments.
/// Unknown keys and malformed values raise ConfigError naming the key.
/// Every key can be overridden with an environment variable named
/// CONCHAIN_<KEY> with dots replaced by underscores, uppercase
/// (e.g. CONCHAIN_WORKLOAD_N_TXS).
ExperimentConfig parse_config_text(std::string_view text,
                                   const std::string& source_name,
                                   bool apply_env = true);
ExperimentConfig parse_config_file(const std::string& path,
                                   bool apply_env = true);

/// All recognized config keys (for diagnostics and docs).
const std::vector<std::string>& config_key_names();

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

nlohmann::json metrics_to_json(const MetricsReport& report);
MetricsReport metrics_from_json(const nlohmann::json& j);

nlohmann::json defense_to_json(const DefenseReport& report);
DefenseReport defense_from_json(const nlohmann::json& j);

/// Fixed-point rendering with trailing zeros trimmed (at least one
/// decimal digit kept): 0.01 at 4 places -> "0.01", 132.5 -> "132.5".
std::string format_fixed_trim(double value, int places);

/// Comparison table header and row:
/// scheme,type,nodes,succ,fail,latency_s,tps,success_rate_pct with
/// latencies and tps at 4 decimal places and the success percentage at
/// 2, all trimmed.
std::string comparison_header();
std::string comparison_row(const MetricsReport& report);

// ---------------------------------------------------------------------------
// Commands (return the list of files written)
// ---------------------------------------------------------------------------

std::vector<std::string> cmd_run(const ExperimentConfig& config);
std::vector<std::string> cmd_compare(const ExperimentConfig& config);
std::vector<std::string> cmd_sweep(const ExperimentConfig& config);

/// Writes both arms' reports; when verdict_line is non-null it receives a
/// one-line summary of the defended verdict.
std::vector<std::string> cmd_attack(const ExperimentConfig& config,
                                    std::string* verdict_line = nullptr);

}  // namespace conchain
