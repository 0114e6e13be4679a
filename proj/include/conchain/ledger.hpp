// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "conchain/common.hpp"

namespace conchain {

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

enum class OpKind : std::uint8_t {
  Query = 0,
  DepositChecking = 1,
  TransactSavings = 2,
  SendPayment = 3,
  WriteCheck = 4,
  Amalgamate = 5,
};

inline constexpr std::size_t kOpKindCount = 6;

const char* to_string(OpKind kind);
std::optional<OpKind> op_kind_from_string(std::string_view token);

/// One banking operation over one or two wallets.
///
/// Semantics applied by apply_tx:
///   Query(a)                reads both balances of a, writes nothing
///   DepositChecking(a, m)   a.checking += m
///   TransactSavings(a, m)   a.savings += m, aborts if the result would
///                           be negative (cannot trigger for m >= 0)
///   SendPayment(a, b, m)    a.checking -= m, b.checking += m; aborts if
///                           a.checking < m
///   WriteCheck(a, m)        aborts if a.checking + a.savings < m, else
///                           deducts from checking first and the
///                           remainder from savings
///   Amalgamate(a, b)        moves all of a's funds into b.checking
///
/// Amounts are non-negative minor units; SendPayment and Amalgamate
/// require a != b.
struct Operation {
  OpKind kind = OpKind::Query;
  WalletId a;
  WalletId b;        // only SendPayment / Amalgamate
  Money amount = 0;  // zero for Query / Amalgamate

  static Operation query(WalletId a);
  static Operation deposit_checking(WalletId a, Money amount);
  static Operation transact_savings(WalletId a, Money amount);
  static Operation send_payment(WalletId a, WalletId b, Money amount);
  static Operation write_check(WalletId a, Money amount);
  static Operation amalgamate(WalletId a, WalletId b);
};

/// Throws std::invalid_argument for empty wallets, negative amounts, or
/// two-wallet operations with identical wallets.
void validate_operation(const Operation& op);

bool uses_second_wallet(OpKind kind);
bool uses_amount(OpKind kind);

// ---------------------------------------------------------------------------
// Transactions
// ---------------------------------------------------------------------------

/// Wallet footprint of an operation. Every write here is a
/// read-modify-write, so writes is always a subset of reads; both are
/// sorted and duplicate-free.
struct RwSets {
  std::vector<WalletId> reads;
  std::vector<WalletId> writes;

  bool operator==(const RwSets&) const = default;
};

/// Exact wallets touched by the serial semantics of apply_tx.
/// Validates the operation first.
RwSets extract_rw_sets(const Operation& op);

enum class TxType : std::uint8_t { Read = 0, ReadWrite = 1 };

enum class TxStatus : std::uint8_t {
  Committed = 0,
  AbortedConflict = 1,
  AbortedInsufficientFunds = 2,
  RejectedFake = 3,
  Expired = 4,
};

const char* to_string(TxStatus status);

enum class FakeReason : std::uint8_t {
  None = 0,
  UnknownWallet = 1,
  DuplicateId = 2,
  OverCommitted = 3,
};

const char* to_string(FakeReason reason);

struct TxOrigin {
  enum class Kind : std::uint8_t { Honest = 0, Attacker = 1 };
  Kind kind = Kind::Honest;
  std::string scenario;     // attack scenario tag, empty when honest
  bool marked_fake = false; // attacker tx the defense is expected to stop
  std::uint64_t group = 0;  // attack pair / burst grouping

  static TxOrigin honest() { return {}; }
  static TxOrigin attacker(std::string scenario, bool marked_fake,
                           std::uint64_t group = 0) {
    return TxOrigin{Kind::Attacker, std::move(scenario), marked_fake, group};
  }

  bool is_attacker() const { return kind == Kind::Attacker; }
};

struct Transaction {
  TxId id = 0;
  TimeUs submit_time_us = 0;
  TxType tx_type = TxType::Read;
  Operation op;
  RwSets rw;
  TxOrigin origin;
};

/// Builds a transaction with rw = extract_rw_sets(op) and tx_type derived
/// from the write set, per the construction invariant.
Transaction make_transaction(TxId id, TimeUs submit_time_us, Operation op,
                             TxOrigin origin = TxOrigin::honest());

// ---------------------------------------------------------------------------
// Ledger state
// ---------------------------------------------------------------------------

struct Account {
  Money checking = 0;
  Money savings = 0;
  std::uint64_t version = 0;

  bool operator==(const Account&) const = default;
};

/// Validated world state. std::map keeps iteration order deterministic
/// for digests and invariant checks.
struct LedgerState {
  std::map<WalletId, Account> accounts;
  std::uint64_t height = 0;

  bool operator==(const LedgerState&) const = default;
};

bool has_wallet(const LedgerState& state, const WalletId& wallet);

/// checking + savings. Throws std::out_of_range for unknown wallets.
Money total_balance(const LedgerState& state, const WalletId& wallet);

Money sum_of_balances(const LedgerState& state);

/// True iff apply_tx would commit (pure guard, no mutation). Assumes all
/// wallets exist.
bool would_commit(const LedgerState& state, const Transaction& tx);

/// Applies the transaction serially. On commit, balances are updated and
/// the version of every written wallet is bumped by one; on abort the
/// state is left untouched. All wallets must exist (screened earlier by
/// classify_tx); missing wallets throw std::out_of_range.
TxStatus apply_tx(LedgerState& state, const Transaction& tx);

using VersionMap = std::map<WalletId, std::uint64_t>;

/// Version snapshot of exactly the requested wallets, as captured at
/// dispatch time. Throws std::out_of_range for unknown wallets.
VersionMap snapshot_versions(const LedgerState& state,
                             const std::vector<WalletId>& reads);

/// True iff every snapshotted wallet still has its snapshot version.
bool occ_validate(const VersionMap& snapshot, const LedgerState& state);

// ---------------------------------------------------------------------------
// Blocks
// ---------------------------------------------------------------------------

struct Block {
  std::uint64_t height = 0;
  std::uint64_t parent_digest = 0;
  std::vector<std::pair<TxId, TxStatus>> txs;
  TimeUs cut_time_us = 0;
  std::uint64_t digest = 0;
};

/// FNV-1a over the canonical serialization: height (8 bytes big-endian),
/// parent digest (8 bytes), then per transaction id (8 bytes) and status
/// code (1 byte), then cut time in microseconds (8 bytes).
std::uint64_t block_digest(std::uint64_t height, std::uint64_t parent_digest,
                           const std::vector<std::pair<TxId, TxStatus>>& txs,
                           TimeUs cut_time_us);

Block make_genesis();

Block cut_block(const Block& tail, std::vector<std::pair<TxId, TxStatus>> txs,
                TimeUs now_us);

/// Structural audit: heights consecutive from 0 and every parent digest
/// matches the recomputed digest of the previous block. Returns the
/// number of violations (0 = a single well-formed chain).
std::uint64_t chain_violations(const std::vector<Block>& chain);

}  // namespace conchain
