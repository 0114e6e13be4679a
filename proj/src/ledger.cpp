// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "conchain/ledger.hpp"

#include <algorithm>
#include <stdexcept>

namespace conchain {

namespace {

void require(bool cond, const char* message) {
  if (!cond) throw std::invalid_argument(message);
}

Account& account_at(LedgerState& state, const WalletId& wallet) {
  auto it = state.accounts.find(wallet);
  if (it == state.accounts.end())
    throw std::out_of_range("unknown wallet: " + wallet);
  return it->second;
}

const Account& account_at(const LedgerState& state, const WalletId& wallet) {
  auto it = state.accounts.find(wallet);
  if (it == state.accounts.end())
    throw std::out_of_range("unknown wallet: " + wallet);
  return it->second;
}

}  // namespace

const char* to_string(OpKind kind) {
  switch (kind) {
    case OpKind::Query: return "query";
    case OpKind::DepositChecking: return "deposit_checking";
    case OpKind::TransactSavings: return "transact_savings";
    case OpKind::SendPayment: return "send_payment";
    case OpKind::WriteCheck: return "write_check";
    case OpKind::Amalgamate: return "amalgamate";
  }
  return "unknown";
}

std::optional<OpKind> op_kind_from_string(std::string_view token) {
  for (std::size_t i = 0; i < kOpKindCount; ++i) {
    auto kind = static_cast<OpKind>(i);
    if (token == to_string(kind)) return kind;
  }
  return std::nullopt;
}

bool uses_second_wallet(OpKind kind) {
  return kind == OpKind::SendPayment || kind == OpKind::Amalgamate;
}

bool uses_amount(OpKind kind) {
  return kind == OpKind::DepositChecking || kind == OpKind::TransactSavings ||
         kind == OpKind::SendPayment || kind == OpKind::WriteCheck;
}

Operation Operation::query(WalletId a) {
  return Operation{OpKind::Query, std::move(a), {}, 0};
}

Operation Operation::deposit_checking(WalletId a, Money amount) {
  return Operation{OpKind::DepositChecking, std::move(a), {}, amount};
}

Operation Operation::transact_savings(WalletId a, Money amount) {
  return Operation{OpKind::TransactSavings, std::move(a), {}, amount};
}

Operation Operation::send_payment(WalletId a, WalletId b, Money amount) {
  return Operation{OpKind::SendPayment, std::move(a), std::move(b), amount};
}

Operation Operation::write_check(WalletId a, Money amount) {
  return Operation{OpKind::WriteCheck, std::move(a), {}, amount};
}

Operation Operation::amalgamate(WalletId a, WalletId b) {
  return Operation{OpKind::Amalgamate, std::move(a), std::move(b), {}};
}

void validate_operation(const Operation& op) {
  require(!op.a.empty(), "operation wallet a must be non-empty");
  require(op.amount >= 0, "operation amount must be non-negative");
  if (uses_second_wallet(op.kind)) {
    require(!op.b.empty(), "operation wallet b must be non-empty");
    require(op.a != op.b, "two-wallet operation requires distinct wallets");
  } else {
    require(op.b.empty(), "single-wallet operation must not carry wallet b");
  }
}

RwSets extract_rw_sets(const Operation& op) {
  validate_operation(op);
  RwSets rw;
  switch (op.kind) {
    case OpKind::Query:
      rw.reads = {op.a};
      break;
    case OpKind::DepositChecking:
    case OpKind::TransactSavings:
    case OpKind::WriteCheck:
      rw.reads = {op.a};
      rw.writes = {op.a};
      break;
    case OpKind::SendPayment:
    case OpKind::Amalgamate:
      rw.reads = {op.a, op.b};
      rw.writes = {op.a, op.b};
      std::sort(rw.reads.begin(), rw.reads.end());
      std::sort(rw.writes.begin(), rw.writes.end());
      break;
  }
  return rw;
}

const char* to_string(TxStatus status) {
  switch (status) {
    case TxStatus::Committed: return "committed";
    case TxStatus::AbortedConflict: return "aborted_conflict";
    case TxStatus::AbortedInsufficientFunds: return "aborted_insufficient_funds";
    case TxStatus::RejectedFake: return "rejected_fake";
    case TxStatus::Expired: return "expired";
  }
  return "unknown";
}

const char* to_string(FakeReason reason) {
  switch (reason) {
    case FakeReason::None: return "none";
    case FakeReason::UnknownWallet: return "unknown_wallet";
    case FakeReason::DuplicateId: return "duplicate_id";
    case FakeReason::OverCommitted: return "over_committed";
  }
  return "unknown";
}

Transaction make_transaction(TxId id, TimeUs submit_time_us, Operation op,
                             TxOrigin origin) {
  Transaction tx;
  tx.id = id;
  tx.submit_time_us = submit_time_us;
  tx.rw = extract_rw_sets(op);
  tx.tx_type = tx.rw.writes.empty() ? TxType::Read : TxType::ReadWrite;
  tx.op = std::move(op);
  tx.origin = std::move(origin);
  return tx;
}

bool has_wallet(const LedgerState& state, const WalletId& wallet) {
  return state.accounts.count(wallet) != 0;
}

Money total_balance(const LedgerState& state, const WalletId& wallet) {
  const Account& acct = account_at(state, wallet);
  return acct.checking + acct.savings;
}

Money sum_of_balances(const LedgerState& state) {
  Money sum = 0;
  for (const auto& [wallet, acct] : state.accounts)
    sum += acct.checking + acct.savings;
  return sum;
}

bool would_commit(const LedgerState& state, const Transaction& tx) {
  const Operation& op = tx.op;
  switch (op.kind) {
    case OpKind::Query:
    case OpKind::DepositChecking:
    case OpKind::Amalgamate:
      return true;
    case OpKind::TransactSavings:
      return account_at(state, op.a).savings + op.amount >= 0;
    case OpKind::SendPayment:
      return account_at(state, op.a).checking >= op.amount;
    case OpKind::WriteCheck: {
      const Account& a = account_at(state, op.a);
      return a.checking + a.savings >= op.amount;
    }
  }
  return false;
}

TxStatus apply_tx(LedgerState& state, const Transaction& tx) {
  const Operation& op = tx.op;
  switch (op.kind) {
    case OpKind::Query: {
      account_at(state, op.a);  // existence check only
      return TxStatus::Committed;
    }
    case OpKind::DepositChecking: {
      Account& a = account_at(state, op.a);
      a.checking += op.amount;
      a.version += 1;
      return TxStatus::Committed;
    }
    case OpKind::TransactSavings: {
      Account& a = account_at(state, op.a);
      if (a.savings + op.amount < 0) return TxStatus::AbortedInsufficientFunds;
      a.savings += op.amount;
      a.version += 1;
      return TxStatus::Committed;
    }
    case OpKind::SendPayment: {
      Account& a = account_at(state, op.a);
      Account& b = account_at(state, op.b);
      if (a.checking < op.amount) return TxStatus::AbortedInsufficientFunds;
      a.checking -= op.amount;
      b.checking += op.amount;
      a.version += 1;
      b.version += 1;
      return TxStatus::Committed;
    }
    case OpKind::WriteCheck: {
      Account& a = account_at(state, op.a);
      if (a.checking + a.savings < op.amount)
        return TxStatus::AbortedInsufficientFunds;
      Money from_checking = std::min(a.checking, op.amount);
      a.checking -= from_checking;
      a.savings -= op.amount - from_checking;
      a.version += 1;
      return TxStatus::Committed;
    }
    case OpKind::Amalgamate: {
      Account& a = account_at(state, op.a);
      Account& b = account_at(state, op.b);
      b.checking += a.checking + a.savings;
      a.checking = 0;
      a.savings = 0;
      a.version += 1;
      b.version += 1;
      return TxStatus::Committed;
    }
  }
  throw std::logic_error("unreachable operation kind");
}

VersionMap snapshot_versions(const LedgerState& state,
                             const std::vector<WalletId>& reads) {
  VersionMap snapshot;
  for (const WalletId& wallet : reads)
    snapshot[wallet] = account_at(state, wallet).version;
  return snapshot;
}

bool occ_validate(const VersionMap& snapshot, const LedgerState& state) {
  for (const auto& [wallet, version] : snapshot) {
    if (account_at(state, wallet).version != version) return false;
  }
  return true;
}

std::uint64_t block_digest(std::uint64_t height, std::uint64_t parent_digest,
                           const std::vector<std::pair<TxId, TxStatus>>& txs,
                           TimeUs cut_time_us) {
  Fnv1a64 hash;
  hash.update_u64_be(height);
  hash.update_u64_be(parent_digest);
  for (const auto& [id, status] : txs) {
    hash.update_u64_be(id);
    hash.update_u8(static_cast<std::uint8_t>(status));
  }
  hash.update_u64_be(static_cast<std::uint64_t>(cut_time_us));
  return hash.digest();
}

Block make_genesis() {
  Block genesis;
  genesis.height = 0;
  genesis.parent_digest = 0;
  genesis.cut_time_us = 0;
  genesis.digest = block_digest(0, 0, {}, 0);
  return genesis;
}

Block cut_block(const Block& tail, std::vector<std::pair<TxId, TxStatus>> txs,
                TimeUs now_us) {
  Block block;
  block.height = tail.height + 1;
  block.parent_digest = tail.digest;
  block.txs = std::move(txs);
  block.cut_time_us = now_us;
  block.digest =
      block_digest(block.height, block.parent_digest, block.txs, now_us);
  return block;
}

std::uint64_t chain_violations(const std::vector<Block>& chain) {
  std::uint64_t violations = 0;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Block& block = chain[i];
    if (block.height != i) ++violations;
    if (block.digest != block_digest(block.height, block.parent_digest,
                                     block.txs, block.cut_time_us))
      ++violations;
    if (i == 0) {
      if (block.parent_digest != 0) ++violations;
    } else if (block.parent_digest != chain[i - 1].digest) {
      ++violations;
    }
  }
  return violations;
}

}  // namespace conchain
