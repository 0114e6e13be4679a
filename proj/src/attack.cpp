// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "conchain/attack.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "conchain/rng.hpp"

namespace conchain {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

}  // namespace

const char* to_string(AttackScenario scenario) {
  switch (scenario) {
    case AttackScenario::DoubleSpend: return "double_spend";
    case AttackScenario::BlockWithholding: return "block_withholding";
    case AttackScenario::Balance: return "balance";
    case AttackScenario::Ddos: return "ddos";
  }
  return "unknown";
}

std::optional<AttackScenario> attack_scenario_from_string(std::string_view token) {
  for (auto scenario :
       {AttackScenario::DoubleSpend, AttackScenario::BlockWithholding,
        AttackScenario::Balance, AttackScenario::Ddos}) {
    if (token == to_string(scenario)) return scenario;
  }
  return std::nullopt;
}

void validate(const AttackConfig& config) {
  validate(config.honest);
  require(config.honest.n_txs >= 1, "attack: honest workload must be non-empty");
  require(config.honest.n_accounts >= 2,
          "attack: honest workload needs at least 2 accounts");
  require(config.intensity > 0.0, "attack.intensity: must be positive");
  require(config.target_wallets >= 1,
          "attack.target_wallets: must be at least 1");
  require(config.target_wallets <= config.honest.n_accounts,
          "attack.target_wallets: must not exceed workload.n_accounts");
  require(config.ddos_success_threshold >= 0.0 &&
              config.ddos_success_threshold <= 1.0,
          "attack.ddos_success_threshold: must be in [0, 1]");
}

WalletId attacker_wallet(std::uint64_t index) {
  return "atk" + std::to_string(index);
}

LedgerState attack_initial_state(const AttackConfig& config) {
  LedgerState state = make_initial_state(config.honest);
  for (std::uint64_t i = 0; i < config.target_wallets; ++i) {
    state.accounts.emplace(
        attacker_wallet(i),
        Account{config.honest.initial_checking, config.honest.initial_savings,
                0});
  }
  return state;
}

namespace {

WalletId target_wallet(const AttackConfig& config, std::uint64_t i) {
  return attacker_wallet(i % config.target_wallets);
}

std::uint64_t attacker_count(const AttackConfig& config) {
  return static_cast<std::uint64_t>(
      std::llround(config.intensity * static_cast<double>(config.honest.n_txs)));
}

struct Draft {
  TimeUs submit_us;
  Operation op;
  TxOrigin origin;
};

// Interleaves attacker drafts into the honest stream by submit time and
// renumbers ids from 0 (stream ids must be strictly increasing). Honest
// transactions win exact ties.
TxStream merge_stream(const TxStream& honest, std::vector<Draft> drafts) {
  std::vector<Draft> all;
  all.reserve(honest.size() + drafts.size());
  for (const Transaction& tx : honest)
    all.push_back(Draft{tx.submit_time_us, tx.op, tx.origin});
  for (Draft& draft : drafts) all.push_back(std::move(draft));
  std::stable_sort(all.begin(), all.end(),
                   [](const Draft& a, const Draft& b) {
                     return a.submit_us < b.submit_us;
                   });
  TxStream stream;
  stream.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    stream.push_back(make_transaction(i, all[i].submit_us,
                                      std::move(all[i].op),
                                      std::move(all[i].origin)));
  return stream;
}

TimeUs honest_span_us(const TxStream& honest) {
  return honest.empty() ? kMicrosPerSecond : honest.back().submit_time_us;
}

}  // namespace

TxStream gen_double_spend(const AttackConfig& config) {
  validate(config);
  TxStream honest = generate_workload(config.honest);
  TimeUs span = honest_span_us(honest);
  SplitMix64 rng(config.seed);

  // Each pair spends 3/4 of the wallet's initial total balance, so one
  // spend passes screening and the pair together over-commits it.
  Money amount = (config.honest.initial_checking +
                  config.honest.initial_savings) * 3 / 4;
  if (amount < 1) amount = 1;

  std::vector<Draft> drafts;
  std::uint64_t pairs = attacker_count(config);
  drafts.reserve(pairs * 2);
  for (std::uint64_t p = 0; p < pairs; ++p) {
    TimeUs t = static_cast<TimeUs>(rng.next_below(static_cast<std::uint64_t>(span))) + 1;
    WalletId source = target_wallet(config, p);
    // Both spends pay out of the attacker's wallet toward an honest one,
    // so attacker balances never grow and the pair arithmetic stays
    // over-committing for the whole run.
    WalletId sink = account_name(p % config.honest.n_accounts);
    drafts.push_back(Draft{
        t, Operation::send_payment(source, sink, amount),
        TxOrigin::attacker("double_spend", false, p)});
    drafts.push_back(Draft{
        t + 1000, Operation::send_payment(source, sink, amount),
        TxOrigin::attacker("double_spend", true, p)});
  }
  return merge_stream(honest, std::move(drafts));
}

TxStream gen_block_withholding(const AttackConfig& config) {
  validate(config);
  TxStream honest = generate_workload(config.honest);
  TimeUs span = honest_span_us(honest);
  SplitMix64 rng(config.seed);

  std::vector<Draft> drafts;
  std::uint64_t count = attacker_count(config);
  drafts.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    TimeUs t = static_cast<TimeUs>(rng.next_below(static_cast<std::uint64_t>(span))) + 1;
    WalletId ghost = "ghost" + std::to_string(i % (config.target_wallets * 4 + 4));
    drafts.push_back(Draft{t, Operation::deposit_checking(ghost, 1),
                           TxOrigin::attacker("block_withholding", true, i)});
  }
  return merge_stream(honest, std::move(drafts));
}

TxStream gen_balance_attack(const AttackConfig& config,
                            TimeUs block_interval_us) {
  validate(config);
  require(block_interval_us > 0, "attack: block interval must be positive");
  TxStream honest = generate_workload(config.honest);
  TimeUs span = honest_span_us(honest);
  SplitMix64 rng(config.seed);

  std::uint64_t count = attacker_count(config);
  std::uint64_t bursts =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(span / block_interval_us));
  Money over_amount = (config.honest.initial_checking +
                       config.honest.initial_savings) * 5;
  if (over_amount < 1) over_amount = 1;

  std::vector<Draft> drafts;
  drafts.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::uint64_t burst = i % bursts;
    TimeUs boundary = static_cast<TimeUs>(burst + 1) * block_interval_us;
    // Jitter of up to +/- 1 ms around the boundary.
    TimeUs t = boundary + static_cast<TimeUs>(rng.next_below(2001)) - 1000;
    if (t < 1) t = 1;
    Operation op;
    if (i % 2 == 0) {
      WalletId ghost = "phantom" + std::to_string(i % 16);
      op = Operation::deposit_checking(ghost, 1);
    } else {
      op = Operation::send_payment(target_wallet(config, i),
                                   account_name(0), over_amount);
    }
    drafts.push_back(Draft{t, std::move(op),
                           TxOrigin::attacker("balance", true, burst)});
  }
  return merge_stream(honest, std::move(drafts));
}

TxStream gen_ddos(const AttackConfig& config) {
  validate(config);
  TxStream honest = generate_workload(config.honest);
  TimeUs span = honest_span_us(honest);
  SplitMix64 rng(config.seed);

  std::vector<Draft> drafts;
  std::uint64_t count = attacker_count(config);
  drafts.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    TimeUs t = static_cast<TimeUs>(rng.next_below(static_cast<std::uint64_t>(span))) + 1;
    // Every flood transaction writes the same wallets, so the whole
    // flood is pairwise conflicting yet individually well-formed.
    Operation op = config.target_wallets >= 2
                       ? Operation::send_payment(target_wallet(config, 0),
                                                 target_wallet(config, 1), 1)
                       : Operation::deposit_checking(target_wallet(config, 0), 1);
    drafts.push_back(Draft{t, std::move(op),
                           TxOrigin::attacker("ddos", false, i)});
  }
  return merge_stream(honest, std::move(drafts));
}

TxStream generate_attack_stream(const AttackConfig& config,
                                TimeUs block_interval_us) {
  switch (config.scenario) {
    case AttackScenario::DoubleSpend: return gen_double_spend(config);
    case AttackScenario::BlockWithholding: return gen_block_withholding(config);
    case AttackScenario::Balance:
      return gen_balance_attack(config, block_interval_us);
    case AttackScenario::Ddos: return gen_ddos(config);
  }
  throw std::logic_error("unreachable attack scenario");
}

DefenseReport evaluate_defense(const RunResult& run, const TxStream& stream,
                               AttackScenario scenario,
                               double ddos_success_threshold) {
  DefenseReport report;
  report.scenario = to_string(scenario);

  std::map<std::uint64_t, std::uint64_t> pair_commits;
  double honest_latency_sum_us = 0;
  std::set<TxId> attacker_ids;
  for (const Transaction& tx : stream) {
    auto it = run.per_tx.find(tx.id);
    if (it == run.per_tx.end())
      throw std::invalid_argument(
          "evaluate_defense: run and stream do not match (missing tx " +
          std::to_string(tx.id) + ")");
    const TxOutcome& outcome = it->second;
    if (tx.origin.is_attacker()) {
      attacker_ids.insert(tx.id);
      ++report.attacker_total;
      switch (outcome.status) {
        case TxStatus::Committed:
          ++report.attacker_committed;
          if (tx.origin.marked_fake) ++report.fake_committed;
          if (scenario == AttackScenario::DoubleSpend)
            ++pair_commits[tx.origin.group];
          break;
        case TxStatus::RejectedFake:
          ++report.fake_rejected;
          break;
        case TxStatus::Expired:
          ++report.fake_expired;
          break;
        default:
          ++report.attacker_aborted;
          break;
      }
    } else {
      ++report.honest_total;
      honest_latency_sum_us += static_cast<double>(outcome.latency_us);
      if (outcome.status == TxStatus::Committed) ++report.honest_committed;
    }
  }
  if (report.honest_total > 0) {
    report.honest_success_rate = static_cast<double>(report.honest_committed) /
                                 static_cast<double>(report.honest_total);
    report.honest_mean_latency_s =
        honest_latency_sum_us / static_cast<double>(report.honest_total) / 1e6;
  }
  report.chain_forks = chain_violations(run.chain);

  switch (scenario) {
    case AttackScenario::DoubleSpend: {
      bool single_commit_per_pair = true;
      for (const auto& [group, commits] : pair_commits) {
        if (commits > 1) single_commit_per_pair = false;
      }
      report.verdict_pass = report.fake_committed == 0 && single_commit_per_pair;
      break;
    }
    case AttackScenario::BlockWithholding: {
      bool dispatched = false;
      for (const EventRecord& ev : run.events) {
        if (ev.kind == EventKind::Dispatch && attacker_ids.count(ev.tx)) {
          dispatched = true;
          break;
        }
      }
      report.verdict_pass = report.fake_committed == 0 && !dispatched;
      break;
    }
    case AttackScenario::Balance:
      report.verdict_pass =
          report.fake_committed == 0 && report.chain_forks == 0;
      break;
    case AttackScenario::Ddos:
      report.verdict_pass =
          report.honest_success_rate >= ddos_success_threshold;
      break;
  }
  return report;
}

AttackArms run_attack(const AttackConfig& config, const EngineConfig& base) {
  validate(config);
  validate(base);
  AttackArms arms;
  arms.stream = generate_attack_stream(config, base.block_interval_us);
  LedgerState initial = attack_initial_state(config);

  EngineConfig defended = base;
  defended.admission_control = true;
  if (config.scenario == AttackScenario::Ddos) {
    if (defended.queue_ttl_us == 0)
      defended.queue_ttl_us = 30 * kMicrosPerSecond;
    // The TTL only sheds load if the scheduler keeps a backlog; cap the
    // per-tick round budget so the flood queues instead of draining into
    // an unbounded dispatch queue.
    if (defended.rounds_per_tick == 0) defended.rounds_per_tick = 5;
  } else {
    defended.queue_ttl_us = 0;
  }

  EngineConfig undefended = defended;
  undefended.admission_control = false;
  undefended.queue_ttl_us = 0;

  arms.defended = run_simulation(arms.stream, Scheme::Conchain, defended,
                                 initial, "attack");
  arms.undefended = run_simulation(arms.stream, Scheme::Fifo, undefended,
                                   initial, "attack");
  arms.defended_report =
      evaluate_defense(arms.defended, arms.stream, config.scenario,
                       config.ddos_success_threshold);
  arms.defended_report.defended = true;
  arms.undefended_report =
      evaluate_defense(arms.undefended, arms.stream, config.scenario,
                       config.ddos_success_threshold);
  arms.undefended_report.defended = false;
  return arms;
}

}  // namespace conchain
