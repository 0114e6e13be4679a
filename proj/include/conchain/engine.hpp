// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "conchain/ledger.hpp"
#include "conchain/schedulers.hpp"
#include "conchain/workload.hpp"

namespace conchain {

/// Per-operation execution durations in virtual time. Reads are cheaper
/// than writes by default (1 ms vs 2 ms).
struct CostModel {
  std::array<TimeUs, kOpKindCount> op_cost_us{1000, 2000, 2000,
                                              2000, 2000, 2000};

  TimeUs cost(OpKind kind) const {
    return op_cost_us[static_cast<std::size_t>(kind)];
  }
};

struct EngineConfig {
  std::uint32_t workers = 4;
  TimeUs scheduling_tick_us = 50'000;
  std::uint32_t rounds_per_tick = 0;  // 0 = unbounded (drain all pending)
  std::uint64_t block_max_txs = 500;
  TimeUs block_interval_us = 1'000'000;
  CostModel cost;
  TimeUs queue_ttl_us = 0;  // 0 = disabled
  TimeUs lock_overhead_us = 5'000;
  std::uint32_t max_hold_rounds = 10;
  double infra_failure_prob = 0.0;
  /// When false, the dependency screening is bypassed: every transaction
  /// is admitted and fabricated ones waste worker time before failing at
  /// validation. Used for the undefended arm of attack experiments.
  bool admission_control = true;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument naming the offending engine.* field.
void validate(const EngineConfig& config);

struct TxOutcome {
  TxStatus status = TxStatus::Committed;
  FakeReason fake_reason = FakeReason::None;
  TimeUs latency_us = 0;
};

/// Per-run results in the shape of the comparison table: success and
/// failure counts, failure breakdown, mean latency over all terminal
/// transactions (failures included), committed throughput, and the
/// execution makespan (last terminal event minus first dispatch).
struct MetricsReport {
  std::string scheme;
  std::string mix;
  std::uint32_t workers = 0;
  std::uint64_t submitted = 0;
  std::uint64_t succ = 0;
  std::uint64_t fail = 0;
  std::map<std::string, std::uint64_t> fail_breakdown;  // keyed by status name
  std::map<std::string, std::uint64_t> fake_reasons;    // keyed by reason name
  double mean_latency_s = 0.0;
  double tps_committed = 0.0;
  double success_rate = 0.0;
  double makespan_s = 0.0;
  std::uint64_t stream_checksum = 0;
  std::uint64_t chain_digest = 0;
  std::uint64_t blocks = 0;

  bool operator==(const MetricsReport&) const = default;
};

enum class EventKind : std::uint8_t {
  Arrival,
  Reject,
  Dispatch,
  Complete,
  Expire,
  BlockCut,
};

const char* to_string(EventKind kind);

struct EventRecord {
  TimeUs time_us = 0;
  EventKind kind = EventKind::Arrival;
  TxId tx = 0;
  std::int32_t worker = -1;  // -1 when not tied to a worker
  std::string detail;
};

/// Line-delimited export: time_us,kind,tx_id,worker,detail (worker field
/// empty when the event has no worker).
std::string export_event_log(const std::vector<EventRecord>& events);

struct RunResult {
  MetricsReport report;
  std::vector<Block> chain;  // genesis first
  std::map<TxId, TxOutcome> per_tx;
  std::vector<TxId> commit_order;
  LedgerState final_state;
  std::vector<EventRecord> events;
};

/// Deterministic single-threaded event loop: arrivals are screened by
/// classify_tx, the selected scheme schedules the pending window every
/// tick, and rounds execute one at a time on the worker pool. Each
/// transaction validates its version snapshot at completion (OCC). The
/// endorse-first baselines (fifo, timestamp, grouped, locking) capture
/// that snapshot at admission, before ordering, so queueing delay turns
/// into validation aborts exactly as in an execute-order-validate
/// pipeline; the dependency scheduler executes after ordering and
/// captures at execution, which together with conflict-free rounds keeps
/// its validation failures at zero. Executed transactions accumulate
/// into blocks cut on size or on the block interval. Pending
/// transactions older than queue_ttl expire. Identical inputs produce
/// identical results.
///
/// Event tie-break at equal times: completions, then expiries, then the
/// scheduling tick, then block cuts, then arrivals; sequence number
/// last.
RunResult run_simulation(const TxStream& stream, Scheme scheme,
                         const EngineConfig& config,
                         const LedgerState& initial,
                         const std::string& mix_label = "custom");

/// Serializability oracle: folds apply_tx over the committed
/// transactions in commit order, starting from the initial state. Throws
/// std::runtime_error if any replayed transaction fails to commit.
LedgerState replay_serial(const TxStream& stream,
                          const std::vector<TxId>& commit_order,
                          LedgerState initial);

/// Standalone metrics computation; throws std::invalid_argument on an
/// empty per-transaction map.
MetricsReport compute_metrics(const std::map<TxId, TxOutcome>& per_tx,
                              TimeUs makespan_us, const std::string& scheme,
                              const std::string& mix, std::uint32_t workers);

}  // namespace conchain
