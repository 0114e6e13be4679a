// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "conchain/engine.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "conchain/dependency.hpp"
#include "conchain/rng.hpp"

namespace conchain {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

}  // namespace

void validate(const EngineConfig& config) {
  require(config.workers >= 1, "engine.workers: must be at least 1");
  require(config.scheduling_tick_us > 0,
          "engine.scheduling_tick_s: must be positive");
  require(config.block_max_txs >= 1, "engine.block_max_txs: must be at least 1");
  require(config.block_interval_us > 0,
          "engine.block_interval_s: must be positive");
  for (std::size_t i = 0; i < kOpKindCount; ++i) {
    require(config.cost.op_cost_us[i] > 0,
            "engine.cost: execution durations must be positive");
  }
  require(config.queue_ttl_us >= 0, "engine.queue_ttl_s: must be non-negative");
  require(config.lock_overhead_us >= 0,
          "engine.lock_overhead_s: must be non-negative");
  require(config.max_hold_rounds >= 1,
          "engine.max_hold_rounds: must be at least 1");
  require(config.infra_failure_prob >= 0.0 && config.infra_failure_prob <= 1.0,
          "engine.infra_failure_prob: must be in [0, 1]");
}

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Arrival: return "arrival";
    case EventKind::Reject: return "reject";
    case EventKind::Dispatch: return "dispatch";
    case EventKind::Complete: return "complete";
    case EventKind::Expire: return "expire";
    case EventKind::BlockCut: return "block_cut";
  }
  return "unknown";
}

std::string export_event_log(const std::vector<EventRecord>& events) {
  std::ostringstream out;
  for (const EventRecord& ev : events) {
    out << ev.time_us << ',' << to_string(ev.kind) << ',' << ev.tx << ',';
    if (ev.worker >= 0) out << ev.worker;
    out << ',' << ev.detail << '\n';
  }
  return out.str();
}

namespace {

// Processing priority at equal timestamps: completions free workers and
// locks before the tick that could reuse them; arrivals land last so a
// transaction submitted exactly on a tick waits for the next one.
enum class EvType : std::uint8_t {
  Complete = 0,
  Expire = 1,
  Tick = 2,
  BlockCut = 3,
  Arrival = 4,
};

struct Event {
  TimeUs time;
  std::uint8_t prio;
  std::uint64_t seq;
  EvType type;
  std::uint64_t payload;  // stream index for tx events
  std::uint32_t worker;
};

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    if (a.prio != b.prio) return a.prio > b.prio;
    return a.seq > b.seq;
  }
};

enum class Phase : std::uint8_t { Unseen, Pending, Queued, Executing, Terminal };

struct TxState {
  Phase phase = Phase::Unseen;
  bool admitted = false;
  bool doomed = false;  // unknown wallet dispatched with screening off
  VersionMap snapshot;
};

class Simulation {
 public:
  Simulation(const TxStream& stream, Scheme scheme, const EngineConfig& config,
             const LedgerState& initial, const std::string& mix_label)
      : stream_(stream),
        scheme_(scheme),
        cfg_(config),
        mix_label_(mix_label),
        state_(initial),
        rng_(config.seed) {
    validate(cfg_);
    hold_.max_hold_rounds = cfg_.max_hold_rounds;
  }

  RunResult run() {
    prepare();
    while (!heap_.empty()) {
      Event ev = heap_.top();
      heap_.pop();
      now_ = ev.time;
      switch (ev.type) {
        case EvType::Arrival: on_arrival(ev.payload); break;
        case EvType::Tick: on_tick(); break;
        case EvType::Complete: on_complete(ev.payload, ev.worker); break;
        case EvType::Expire: on_expire(ev.payload); break;
        case EvType::BlockCut: on_block_interval(); break;
      }
    }
    return finalize();
  }

 private:
  void push_event(TimeUs time, EvType type, std::uint64_t payload = 0,
                  std::uint32_t worker = 0) {
    heap_.push(Event{time, static_cast<std::uint8_t>(type), seq_++, type,
                     payload, worker});
  }

  void log(EventKind kind, TxId tx, std::int32_t worker, std::string detail) {
    events_.push_back(EventRecord{now_, kind, tx, worker, std::move(detail)});
  }

  void prepare() {
    tx_states_.resize(stream_.size());
    footprints_.reserve(stream_.size());
    std::unordered_set<TxId> ids;
    ids.reserve(stream_.size());
    TimeUs prev = 0;
    for (std::size_t i = 0; i < stream_.size(); ++i) {
      const Transaction& tx = stream_[i];
      if (!ids.insert(tx.id).second)
        throw std::invalid_argument("run_simulation: duplicate tx id " +
                                    std::to_string(tx.id));
      if (tx.submit_time_us < prev)
        throw std::invalid_argument(
            "run_simulation: stream submit times must be non-decreasing");
      prev = tx.submit_time_us;
      index_of_.emplace(tx.id, i);
      footprints_.push_back(make_footprint(tx.rw, interner_));
      push_event(tx.submit_time_us, EvType::Arrival, i);
    }
    chain_.push_back(make_genesis());
    push_event(cfg_.scheduling_tick_us, EvType::Tick);
    push_event(cfg_.block_interval_us, EvType::BlockCut);
  }

  const Transaction& tx_at(std::size_t idx) const { return stream_[idx]; }

  // The endorse-first baselines capture their read set on admission,
  // before ordering, which is how queueing delay turns into validation
  // aborts. The dependency scheduler executes after ordering and the
  // locking scheme holds every touched wallet from acquisition to
  // completion; both capture at execution, where nothing conflicting can
  // intervene.
  bool captures_at_admission() const {
    return scheme_ != Scheme::Conchain && scheme_ != Scheme::Locking;
  }

  void on_arrival(std::size_t idx) {
    const Transaction& tx = tx_at(idx);
    TxState& st = tx_states_[idx];
    log(EventKind::Arrival, tx.id, -1, to_string(tx.op.kind));
    if (cfg_.admission_control) {
      Validity validity = classify_tx(tx, state_, book_);
      if (!validity.valid) {
        log(EventKind::Reject, tx.id, -1, to_string(validity.reason));
        settle_terminal(idx, TxStatus::RejectedFake, validity.reason);
        return;
      }
      book_.admit(tx, state_);
      st.admitted = true;
    } else {
      for (const WalletId& wallet : tx.rw.reads) {
        if (!has_wallet(state_, wallet)) {
          st.doomed = true;
          break;
        }
      }
    }
    if (captures_at_admission() && !st.doomed)
      st.snapshot = snapshot_versions(state_, tx.rw.reads);
    st.phase = Phase::Pending;
    pending_.push_back(idx);
    if (cfg_.queue_ttl_us > 0)
      push_event(tx.submit_time_us + cfg_.queue_ttl_us, EvType::Expire, idx);
  }

  void on_tick() {
    // Compact the pending list and build the scheduler's view in arrival
    // order.
    PendingView view;
    std::vector<const Footprint*> fps;
    {
      std::vector<std::size_t> live;
      live.reserve(pending_.size());
      for (std::size_t idx : pending_) {
        if (tx_states_[idx].phase == Phase::Pending) live.push_back(idx);
      }
      pending_ = std::move(live);
    }
    view.reserve(pending_.size());
    fps.reserve(pending_.size());
    for (std::size_t idx : pending_) {
      view.push_back(&tx_at(idx));
      fps.push_back(&footprints_[idx]);
    }

    if (!view.empty()) {
      Schedule schedule;
      switch (scheme_) {
        case Scheme::Fifo:
          schedule = schedule_fifo(view, cfg_.workers);
          break;
        case Scheme::Timestamp:
          schedule = schedule_timestamp(view, cfg_.workers);
          break;
        case Scheme::Grouped:
          schedule = schedule_grouped(view, cfg_.workers);
          break;
        case Scheme::Locking:
          schedule = schedule_locking(view, cfg_.workers, locks_);
          break;
        case Scheme::Conchain:
          schedule = schedule_conchain_footprints(view, fps, cfg_.workers,
                                                  hold_, cfg_.rounds_per_tick);
          break;
      }
      for (const auto& round : schedule.rounds) {
        std::vector<std::pair<std::size_t, std::uint32_t>> queued;
        queued.reserve(round.size());
        for (const Assignment& assignment : round) {
          std::size_t idx = index_of_.at(assignment.tx);
          tx_states_[idx].phase = Phase::Queued;
          queued.emplace_back(idx, assignment.worker);
        }
        round_queue_.push_back(std::move(queued));
      }
    }
    maybe_start_round();

    if (terminal_count_ < stream_.size())
      push_event(now_ + cfg_.scheduling_tick_us, EvType::Tick);
  }

  void maybe_start_round() {
    if (round_active_ || round_queue_.empty()) return;
    auto round = std::move(round_queue_.front());
    round_queue_.pop_front();
    round_active_ = true;
    executing_ = round.size();
    if (first_dispatch_ < 0) first_dispatch_ = now_;
    for (const auto& [idx, worker] : round) {
      const Transaction& tx = tx_at(idx);
      TxState& st = tx_states_[idx];
      st.phase = Phase::Executing;
      if (!captures_at_admission() && !st.doomed)
        st.snapshot = snapshot_versions(state_, tx.rw.reads);
      TimeUs duration = cfg_.cost.cost(tx.op.kind);
      if (scheme_ == Scheme::Locking) duration += cfg_.lock_overhead_us;
      log(EventKind::Dispatch, tx.id, static_cast<std::int32_t>(worker),
          to_string(tx.op.kind));
      push_event(now_ + duration, EvType::Complete, idx, worker);
    }
  }

  void on_complete(std::size_t idx, std::uint32_t worker) {
    const Transaction& tx = tx_at(idx);
    TxState& st = tx_states_[idx];

    TxStatus status;
    FakeReason reason = FakeReason::None;
    if (st.doomed) {
      status = TxStatus::RejectedFake;
      reason = FakeReason::UnknownWallet;
    } else if (!occ_validate(st.snapshot, state_)) {
      status = TxStatus::AbortedConflict;
    } else if (cfg_.infra_failure_prob > 0.0 && would_commit(state_, tx) &&
               rng_.next_unit() < cfg_.infra_failure_prob) {
      // Infrastructure noise: an otherwise-committed transaction is
      // recorded as failed and the state left untouched.
      status = TxStatus::AbortedConflict;
    } else {
      status = apply_tx(state_, tx);
    }

    if (status == TxStatus::Committed) commit_order_.push_back(tx.id);
    st.snapshot.clear();
    log(EventKind::Complete, tx.id, static_cast<std::int32_t>(worker),
        to_string(status));
    settle_terminal(idx, status, reason);
    buffer_.emplace_back(tx.id, status);
    if (scheme_ == Scheme::Locking) locks_.release(tx);

    if (buffer_.size() >= cfg_.block_max_txs) cut_now();
    if (--executing_ == 0) {
      round_active_ = false;
      maybe_start_round();
    }
  }

  void on_expire(std::size_t idx) {
    TxState& st = tx_states_[idx];
    if (st.phase != Phase::Pending) return;
    log(EventKind::Expire, tx_at(idx).id, -1, "queue_ttl");
    settle_terminal(idx, TxStatus::Expired, FakeReason::None);
    hold_.ages.erase(tx_at(idx).id);
  }

  void on_block_interval() {
    if (!buffer_.empty()) cut_now();
    if (terminal_count_ < stream_.size() || !buffer_.empty())
      push_event(now_ + cfg_.block_interval_us, EvType::BlockCut);
  }

  void cut_now() {
    chain_.push_back(cut_block(chain_.back(), std::move(buffer_), now_));
    buffer_.clear();
    log(EventKind::BlockCut, 0, -1,
        "height=" + std::to_string(chain_.back().height));
  }

  void settle_terminal(std::size_t idx, TxStatus status, FakeReason reason) {
    const Transaction& tx = tx_at(idx);
    TxState& st = tx_states_[idx];
    st.phase = Phase::Terminal;
    if (st.admitted) book_.settle(tx.id);
    TxOutcome outcome;
    outcome.status = status;
    outcome.fake_reason = reason;
    outcome.latency_us = now_ - tx.submit_time_us;
    per_tx_.emplace(tx.id, outcome);
    last_terminal_ = std::max(last_terminal_, now_);
    ++terminal_count_;
  }

  RunResult finalize() {
    RunResult result;
    TimeUs makespan = 0;
    if (first_dispatch_ >= 0 && last_terminal_ > first_dispatch_)
      makespan = last_terminal_ - first_dispatch_;

    MetricsReport report;
    report.scheme = to_string(scheme_);
    report.mix = mix_label_;
    report.workers = cfg_.workers;
    report.submitted = stream_.size();
    double latency_sum_us = 0;
    for (const auto& [id, outcome] : per_tx_) {
      latency_sum_us += static_cast<double>(outcome.latency_us);
      if (outcome.status == TxStatus::Committed) {
        ++report.succ;
      } else {
        ++report.fail;
        ++report.fail_breakdown[to_string(outcome.status)];
        if (outcome.status == TxStatus::RejectedFake)
          ++report.fake_reasons[to_string(outcome.fake_reason)];
      }
    }
    if (!per_tx_.empty())
      report.mean_latency_s =
          latency_sum_us / static_cast<double>(per_tx_.size()) / 1e6;
    report.makespan_s = us_to_seconds(makespan);
    if (report.succ > 0 && makespan > 0)
      report.tps_committed =
          static_cast<double>(report.succ) / report.makespan_s;
    if (report.submitted > 0)
      report.success_rate = static_cast<double>(report.succ) /
                            static_cast<double>(report.submitted);
    report.stream_checksum = stream_checksum(stream_);
    report.chain_digest = chain_.back().digest;
    report.blocks = chain_.size();

    result.report = std::move(report);
    result.chain = std::move(chain_);
    result.per_tx = std::move(per_tx_);
    result.commit_order = std::move(commit_order_);
    result.final_state = std::move(state_);
    result.events = std::move(events_);
    return result;
  }

  const TxStream& stream_;
  Scheme scheme_;
  EngineConfig cfg_;
  std::string mix_label_;

  LedgerState state_;
  AdmissionBook book_;
  WalletInterner interner_;
  std::vector<Footprint> footprints_;
  std::map<TxId, std::size_t> index_of_;
  std::vector<TxState> tx_states_;
  std::vector<std::size_t> pending_;  // stream indices, arrival order

  std::deque<std::vector<std::pair<std::size_t, std::uint32_t>>> round_queue_;
  bool round_active_ = false;
  std::size_t executing_ = 0;

  HoldState hold_;
  LockTable locks_;

  std::vector<Block> chain_;
  std::vector<std::pair<TxId, TxStatus>> buffer_;

  std::map<TxId, TxOutcome> per_tx_;
  std::vector<TxId> commit_order_;
  std::vector<EventRecord> events_;

  std::priority_queue<Event, std::vector<Event>, EventAfter> heap_;
  std::uint64_t seq_ = 0;
  SplitMix64 rng_;
  TimeUs now_ = 0;
  TimeUs first_dispatch_ = -1;
  TimeUs last_terminal_ = 0;
  std::uint64_t terminal_count_ = 0;
};

}  // namespace

RunResult run_simulation(const TxStream& stream, Scheme scheme,
                         const EngineConfig& config, const LedgerState& initial,
                         const std::string& mix_label) {
  Simulation sim(stream, scheme, config, initial, mix_label);
  return sim.run();
}

LedgerState replay_serial(const TxStream& stream,
                          const std::vector<TxId>& commit_order,
                          LedgerState initial) {
  std::map<TxId, const Transaction*> by_id;
  for (const Transaction& tx : stream) by_id.emplace(tx.id, &tx);
  for (TxId id : commit_order) {
    auto it = by_id.find(id);
    if (it == by_id.end())
      throw std::runtime_error("replay_serial: unknown tx id " +
                               std::to_string(id));
    TxStatus status = apply_tx(initial, *it->second);
    if (status != TxStatus::Committed)
      throw std::runtime_error("replay_serial: tx " + std::to_string(id) +
                               " failed to commit under serial replay (" +
                               to_string(status) + ")");
  }
  return initial;
}

MetricsReport compute_metrics(const std::map<TxId, TxOutcome>& per_tx,
                              TimeUs makespan_us, const std::string& scheme,
                              const std::string& mix, std::uint32_t workers) {
  if (per_tx.empty())
    throw std::invalid_argument("compute_metrics: per_tx must be non-empty");
  MetricsReport report;
  report.scheme = scheme;
  report.mix = mix;
  report.workers = workers;
  report.submitted = per_tx.size();
  double latency_sum_us = 0;
  for (const auto& [id, outcome] : per_tx) {
    latency_sum_us += static_cast<double>(outcome.latency_us);
    if (outcome.status == TxStatus::Committed) {
      ++report.succ;
    } else {
      ++report.fail;
      ++report.fail_breakdown[to_string(outcome.status)];
      if (outcome.status == TxStatus::RejectedFake)
        ++report.fake_reasons[to_string(outcome.fake_reason)];
    }
  }
  report.mean_latency_s =
      latency_sum_us / static_cast<double>(per_tx.size()) / 1e6;
  report.makespan_s = us_to_seconds(makespan_us);
  if (report.succ > 0 && makespan_us > 0)
    report.tps_committed = static_cast<double>(report.succ) / report.makespan_s;
  report.success_rate =
      static_cast<double>(report.succ) / static_cast<double>(report.submitted);
  return report;
}

}  // namespace conchain
