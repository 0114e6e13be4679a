// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "conchain/engine.hpp"
#include "conchain/workload.hpp"

namespace conchain {

enum class AttackScenario : std::uint8_t {
  DoubleSpend = 0,
  BlockWithholding = 1,
  Balance = 2,
  Ddos = 3,
};

const char* to_string(AttackScenario scenario);
std::optional<AttackScenario> attack_scenario_from_string(std::string_view token);

struct AttackConfig {
  AttackScenario scenario = AttackScenario::DoubleSpend;
  WorkloadConfig honest;
  double intensity = 10.0;  // attacker transactions (or pairs) per honest tx
  std::uint64_t target_wallets = 2;
  std::uint64_t seed = 1;
  double ddos_success_threshold = 0.90;
};

/// Throws std::invalid_argument naming the offending attack.* field.
void validate(const AttackConfig& config);

/// Attacker-owned wallet token ("atk0", "atk1", ...). Attackers operate
/// their own funded wallets, so honest traffic never shifts the balances
/// the attack arithmetic depends on.
WalletId attacker_wallet(std::uint64_t index);

/// Honest world state plus target_wallets attacker-owned wallets funded
/// with the same initial balances.
LedgerState attack_initial_state(const AttackConfig& config);

/// Attacker pairs of near-simultaneous payments from the same funded
/// wallet whose combined amount exceeds its balance; the second of each
/// pair is the over-commit the screening must reject.
TxStream gen_double_spend(const AttackConfig& config);

/// Fabricated transactions over wallets that do not exist in the ledger,
/// modeling withheld-block fabrications injected into the pending pool.
TxStream gen_block_withholding(const AttackConfig& config);

/// Bursts of fabrications (unknown wallets plus single-shot over-commits)
/// timed at block boundaries, attempting to get a block built from
/// fakes.
TxStream gen_balance_attack(const AttackConfig& config, TimeUs block_interval_us);

/// Flood of mutually conflicting but well-formed transactions aimed at a
/// small target wallet set, saturating the pending queue; the queue TTL
/// is the defense.
TxStream gen_ddos(const AttackConfig& config);

/// Dispatches on config.scenario.
TxStream generate_attack_stream(const AttackConfig& config,
                                TimeUs block_interval_us);

struct DefenseReport {
  std::string scenario;
  bool defended = false;
  std::uint64_t attacker_total = 0;
  /// Committed attacker transactions the scenario deems illegitimate
  /// (marked over-commits and fabrications). The first spend of a
  /// double-spend pair is a legitimate payment and does not count here.
  std::uint64_t fake_committed = 0;
  std::uint64_t fake_rejected = 0;
  std::uint64_t fake_expired = 0;
  std::uint64_t attacker_committed = 0;
  std::uint64_t attacker_aborted = 0;
  std::uint64_t honest_total = 0;
  std::uint64_t honest_committed = 0;
  double honest_success_rate = 0.0;
  double honest_mean_latency_s = 0.0;
  std::uint64_t chain_forks = 0;
  bool verdict_pass = false;

  bool operator==(const DefenseReport&) const = default;
};

/// Audits a finished run against the scenario's criterion:
///   DoubleSpend       no marked over-commit commits and at most one
///                     transaction of each attacker pair commits
///   BlockWithholding  no fabrication commits and no attacker id is ever
///                     dispatched to a worker
///   Balance           no fabrication commits and the chain stays a
///                     single well-formed sequence
///   DDoS              honest success rate at least the configured
///                     threshold
DefenseReport evaluate_defense(const RunResult& run, const TxStream& stream,
                               AttackScenario scenario,
                               double ddos_success_threshold = 0.90);

struct AttackArms {
  TxStream stream;
  RunResult defended;        // conchain, screening on, scenario TTL
  RunResult undefended;      // fifo, screening off, no TTL
  DefenseReport defended_report;
  DefenseReport undefended_report;
};

/// Runs the defended and undefended arms on the identical stream. The
/// base engine config is adjusted per arm: the defended arm runs
/// conchain with admission control (plus a 30 s queue TTL and a bounded
/// round budget for the DDoS scenario); the undefended arm runs fifo
/// with screening and TTL off.
AttackArms run_attack(const AttackConfig& config, const EngineConfig& base);

}  // namespace conchain
