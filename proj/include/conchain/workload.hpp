// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "conchain/ledger.hpp"

namespace conchain {

/// Per-operation weights, normalized at draw time. Presets:
///   "R"  = 100% Query
///   "RW" = Query .30, DepositChecking .15, TransactSavings .15,
///          SendPayment .25, WriteCheck .10, Amalgamate .05
struct OpMix {
  std::array<double, kOpKindCount> weights{};

  double& operator[](OpKind kind) { return weights[static_cast<std::size_t>(kind)]; }
  double operator[](OpKind kind) const { return weights[static_cast<std::size_t>(kind)]; }
  double total() const;

  static OpMix read_only();
  static OpMix read_write();

  bool operator==(const OpMix&) const = default;
};

struct WorkloadConfig {
  std::uint64_t n_accounts = 1000;
  Money initial_checking = 10'000;
  Money initial_savings = 10'000;
  std::uint64_t n_txs = 9000;
  OpMix mix = OpMix::read_write();
  std::uint64_t hot_accounts = 10;
  double hot_probability = 0.5;
  double arrival_rate = 1000.0;  // transactions per virtual second
  Money amount_min = 1;
  Money amount_max = 50;
  std::uint64_t seed = 1;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const WorkloadConfig& config);

using TxStream = std::vector<Transaction>;

/// Wallet token for account index i ("a0", "a1", ...). Hot accounts are
/// the lowest indices.
WalletId account_name(std::uint64_t index);

/// n_accounts wallets, each funded with the configured initial balances.
LedgerState make_initial_state(const WorkloadConfig& config);

/// Deterministic, seeded stream: operation kinds by mix weight, wallets
/// drawn from the hot set with hot_probability (uniform otherwise),
/// amounts uniform in [amount_min, amount_max], exponential
/// inter-arrival times at arrival_rate. Same config gives a bit-identical
/// stream. Ids run from 0; submit times are strictly increasing.
TxStream generate_workload(const WorkloadConfig& config);

/// Fraction of unordered transaction pairs that conflict, via the
/// conflicts() predicate. Requires at least two transactions.
double contention_index(const TxStream& txs);

/// Line-delimited export: id,submit_time_us,op_kind,arg_wallets,amount
/// with wallets separated by ';'. import_stream() parses it back
/// (origins come back honest; attack streams are regenerated, not
/// replayed from disk).
std::string export_stream(const TxStream& txs);
TxStream import_stream(std::string_view text);

/// FNV-1a over the export serialization; used to assert that every
/// scheme in a comparison consumed the identical stream.
std::uint64_t stream_checksum(const TxStream& txs);

}  // namespace conchain
