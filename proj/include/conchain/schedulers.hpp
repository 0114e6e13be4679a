// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "conchain/dependency.hpp"
#include "conchain/ledger.hpp"

namespace conchain {

/// Ordering scheme selector. Token names are part of the CLI/config
/// surface: fifo | timestamp | grouped | locking | conchain.
enum class Scheme : std::uint8_t {
  Fifo = 0,
  Timestamp = 1,
  Grouped = 2,
  Locking = 3,
  Conchain = 4,
};

const char* to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view token);
std::vector<Scheme> all_schemes();

struct Assignment {
  TxId tx = 0;
  std::uint32_t worker = 0;
};

/// One scheduling call's output: ordered rounds of at most W
/// transactions with distinct worker indices, plus the ids deferred to
/// the next call. No id appears twice across rounds and held.
struct Schedule {
  std::vector<std::vector<Assignment>> rounds;
  std::vector<TxId> held;
};

/// Hold bookkeeping for the dependency scheduler: how many scheduling
/// calls each pending transaction has been deferred. A transaction whose
/// age reaches max_hold_rounds sorts ahead of everything younger and
/// opens the next round.
struct HoldState {
  std::map<TxId, std::uint32_t> ages;
  std::uint32_t max_hold_rounds = 10;

  std::uint32_t age(TxId id) const {
    auto it = ages.find(id);
    return it == ages.end() ? 0 : it->second;
  }
};

/// Exclusive wallet locks for the locking scheme. A dispatched
/// transaction holds every wallet it touches until the engine releases
/// them at execution completion.
class LockTable {
 public:
  bool available(const Transaction& tx) const;
  void acquire(const Transaction& tx);
  void release(const Transaction& tx);
  std::size_t held_count() const { return locks_.size(); }

 private:
  std::map<WalletId, TxId> locks_;
};

using PendingView = std::vector<const Transaction*>;

/// Arrival order, chunked into rounds of W. Nothing held.
Schedule schedule_fifo(const PendingView& pending, std::uint32_t workers);

/// Stable sort by (submit_time, id), then chunked. Nothing held.
Schedule schedule_timestamp(const PendingView& pending, std::uint32_t workers);

/// Read transactions first (timestamp order), then read-write ones; each
/// group chunked by W. Every read round precedes every write round.
Schedule schedule_grouped(const PendingView& pending, std::uint32_t workers);

/// Timestamp-order scan; a transaction dispatches only when every wallet
/// it touches is free (or already its own), acquiring all of them until
/// the engine releases at completion. Blocked transactions are held.
Schedule schedule_locking(const PendingView& pending, std::uint32_t workers,
                          LockTable& locks);

/// Greedy conflict-free batching over an explicit conflict graph.
/// Candidates are visited by (hold age desc, submit_time, id); a
/// transaction joins the current round only if it conflicts with none of
/// the round's members. Rounds are sealed at W members or when nothing
/// else fits, up to rounds_per_tick rounds (0 = unbounded). Leftovers are
/// held with their age incremented. The graph must cover all pending
/// ids.
Schedule schedule_conchain(const PendingView& pending, std::uint32_t workers,
                           const ConflictGraph& graph, HoldState& hold,
                           std::uint32_t rounds_per_tick = 0);

/// Same policy with interned footprints instead of a materialized graph;
/// this is what the engine runs so that adversarial cliques never
/// materialize quadratic edge sets. footprints[i] belongs to pending[i].
Schedule schedule_conchain_footprints(const PendingView& pending,
                                      const std::vector<const Footprint*>& footprints,
                                      std::uint32_t workers, HoldState& hold,
                                      std::uint32_t rounds_per_tick = 0);

}  // namespace conchain
