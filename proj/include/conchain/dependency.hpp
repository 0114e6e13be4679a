// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "conchain/ledger.hpp"

namespace conchain {

// ---------------------------------------------------------------------------
// Conflict predicate and graph
// ---------------------------------------------------------------------------

/// Read-write / write-write wallet overlap. Read-read overlap alone is
/// not a conflict. Symmetric; throws std::invalid_argument when both
/// transactions carry the same id.
bool conflicts(const Transaction& t1, const Transaction& t2);

/// Symmetric irreflexive graph over transaction ids; edges stored as
/// (lo, hi) pairs, sorted.
struct ConflictGraph {
  std::vector<TxId> nodes;                     // sorted
  std::vector<std::pair<TxId, TxId>> edges;    // lo < hi, sorted
  std::map<TxId, std::vector<TxId>> adjacency; // sorted neighbor lists

  bool has_node(TxId id) const;
  bool has_edge(TxId a, TxId b) const;
};

/// Builds the graph with a wallet -> transactions inverted index, so the
/// cost is proportional to the number of per-wallet reader/writer pairs
/// rather than to naive all-pairs set scans. Worst case is still
/// quadratic when everything shares one wallet (that is the size of the
/// output). Throws std::invalid_argument on duplicate ids.
ConflictGraph build_conflict_graph(const std::vector<Transaction>& txs);
ConflictGraph build_conflict_graph(const std::vector<const Transaction*>& txs);

/// Undirected DOT rendering, nodes labeled by transaction id.
std::string to_dot(const ConflictGraph& graph);

// ---------------------------------------------------------------------------
// Interned footprints (fast conflict tests for the engine)
// ---------------------------------------------------------------------------

/// Maps wallet tokens to dense u32 ids so the hot scheduling paths can
/// compare integers instead of strings.
class WalletInterner {
 public:
  std::uint32_t intern(const WalletId& wallet);
  std::size_t size() const { return ids_.size(); }

 private:
  std::map<WalletId, std::uint32_t> ids_;
};

/// Interned copy of a transaction's RwSets plus a signature hash that is
/// equal for identical footprints (used to skip repeated failing
/// candidates during round packing).
struct Footprint {
  std::vector<std::uint32_t> reads;   // sorted
  std::vector<std::uint32_t> writes;  // sorted
  std::uint64_t signature = 0;
};

Footprint make_footprint(const RwSets& rw, WalletInterner& interner);

/// Same predicate as conflicts(), over interned footprints.
bool footprints_conflict(const Footprint& f1, const Footprint& f2);

// ---------------------------------------------------------------------------
// Admission screening
// ---------------------------------------------------------------------------

struct Validity {
  bool valid = true;
  FakeReason reason = FakeReason::None;

  static Validity ok() { return {}; }
  static Validity fake(FakeReason reason) { return Validity{false, reason}; }
};

/// Worst-case debits the transaction can take from each wallet:
/// SendPayment and WriteCheck debit their amount from wallet a,
/// Amalgamate drains wallet a's full current balance, everything else
/// debits nothing.
std::vector<std::pair<WalletId, Money>> worst_case_debits(
    const Transaction& tx, const LedgerState& state);

/// Single-writer book of admitted ids and in-flight worst-case debits.
/// The ordering stage admits a Valid transaction (recording its debits)
/// and settles it when it reaches a terminal status (releasing them).
/// Admitted ids are remembered for the whole run for duplicate
/// detection.
class AdmissionBook {
 public:
  bool is_admitted(TxId id) const { return admitted_.count(id) != 0; }
  Money pending_debit(const WalletId& wallet) const;
  const std::map<WalletId, Money>& pending_debits() const { return pending_; }

  void admit(const Transaction& tx, const LedgerState& state);
  void settle(TxId id);

 private:
  std::set<TxId> admitted_;
  std::map<WalletId, Money> pending_;
  std::map<TxId, std::vector<std::pair<WalletId, Money>>> recorded_;
};

/// Screens one transaction against the current state and in-flight
/// debits. Reasons are checked in fixed priority order:
/// UnknownWallet, then DuplicateId, then OverCommitted (the tx's
/// worst-case debit plus already-pending debits would exceed the
/// wallet's current total balance).
Validity classify_tx(const Transaction& tx, const LedgerState& state,
                     const AdmissionBook& book);

}  // namespace conchain
