// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "conchain/workload.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "conchain/dependency.hpp"
#include "conchain/rng.hpp"

namespace conchain {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

}  // namespace

double OpMix::total() const {
  double sum = 0;
  for (double w : weights) sum += w;
  return sum;
}

OpMix OpMix::read_only() {
  OpMix mix;
  mix[OpKind::Query] = 1.0;
  return mix;
}

OpMix OpMix::read_write() {
  OpMix mix;
  mix[OpKind::Query] = 0.30;
  mix[OpKind::DepositChecking] = 0.15;
  mix[OpKind::TransactSavings] = 0.15;
  mix[OpKind::SendPayment] = 0.25;
  mix[OpKind::WriteCheck] = 0.10;
  mix[OpKind::Amalgamate] = 0.05;
  return mix;
}

void validate(const WorkloadConfig& config) {
  require(config.n_accounts >= 1, "workload.n_accounts: must be at least 1");
  require(config.initial_checking >= 0,
          "workload.initial_checking: must be non-negative");
  require(config.initial_savings >= 0,
          "workload.initial_savings: must be non-negative");
  require(config.hot_accounts <= config.n_accounts,
          "workload.hot_accounts: must not exceed workload.n_accounts");
  require(config.hot_probability >= 0.0 && config.hot_probability <= 1.0,
          "workload.hot_probability: must be in [0, 1]");
  require(config.arrival_rate > 0.0, "workload.arrival_rate: must be positive");
  require(config.amount_min >= 0 && config.amount_max >= config.amount_min,
          "workload.amount_min/amount_max: need 0 <= min <= max");
  bool any_positive = false;
  for (double w : config.mix.weights) {
    require(w >= 0.0, "workload.mix: weights must be non-negative");
    if (w > 0.0) any_positive = true;
  }
  require(any_positive, "workload.mix: at least one weight must be positive");
  // Two-wallet operations need a second distinct wallet to draw.
  if (config.n_accounts < 2) {
    require(config.mix[OpKind::SendPayment] == 0.0 &&
                config.mix[OpKind::Amalgamate] == 0.0,
            "workload.mix: two-wallet operations need n_accounts >= 2");
  }
}

WalletId account_name(std::uint64_t index) {
  return "a" + std::to_string(index);
}

LedgerState make_initial_state(const WorkloadConfig& config) {
  LedgerState state;
  for (std::uint64_t i = 0; i < config.n_accounts; ++i) {
    state.accounts.emplace(
        account_name(i),
        Account{config.initial_checking, config.initial_savings, 0});
  }
  return state;
}

namespace {

OpKind draw_kind(SplitMix64& rng, const OpMix& mix, double total) {
  double x = rng.next_unit() * total;
  double acc = 0;
  for (std::size_t i = 0; i < kOpKindCount; ++i) {
    acc += mix.weights[i];
    if (x < acc) return static_cast<OpKind>(i);
  }
  // Floating point edge at x == total: take the last positive weight.
  for (std::size_t i = kOpKindCount; i-- > 0;) {
    if (mix.weights[i] > 0) return static_cast<OpKind>(i);
  }
  return OpKind::Query;
}

std::uint64_t draw_account(SplitMix64& rng, const WorkloadConfig& config) {
  std::uint64_t hot = config.hot_accounts;
  std::uint64_t cold = config.n_accounts - hot;
  if (hot > 0 && (cold == 0 || rng.next_bernoulli(config.hot_probability)))
    return rng.next_below(hot);
  return hot + rng.next_below(cold);
}

}  // namespace

TxStream generate_workload(const WorkloadConfig& config) {
  validate(config);
  SplitMix64 rng(config.seed);
  const double total_weight = config.mix.total();

  TxStream stream;
  stream.reserve(config.n_txs);
  TimeUs now = 0;
  for (std::uint64_t i = 0; i < config.n_txs; ++i) {
    now += rng.next_exponential_us(config.arrival_rate);
    OpKind kind = draw_kind(rng, config.mix, total_weight);
    WalletId a = account_name(draw_account(rng, config));
    Operation op;
    if (uses_second_wallet(kind)) {
      WalletId b = a;
      while (b == a) b = account_name(draw_account(rng, config));
      op = kind == OpKind::SendPayment
               ? Operation::send_payment(a, b, 0)
               : Operation::amalgamate(a, b);
    } else {
      op.kind = kind;
      op.a = a;
    }
    if (uses_amount(kind))
      op.amount = rng.next_range(config.amount_min, config.amount_max);
    stream.push_back(make_transaction(i, now, std::move(op)));
  }
  return stream;
}

double contention_index(const TxStream& txs) {
  if (txs.size() < 2)
    throw std::invalid_argument(
        "contention_index: need at least two transactions");
  // The predicate only looks at footprints; interning first makes the
  // quadratic pass cheap enough for full acceptance streams.
  WalletInterner interner;
  std::vector<Footprint> footprints;
  footprints.reserve(txs.size());
  for (const Transaction& tx : txs)
    footprints.push_back(make_footprint(tx.rw, interner));

  const std::size_t n = footprints.size();
  std::uint64_t conflicting = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (footprints_conflict(footprints[i], footprints[j])) ++conflicting;
    }
  }
  std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  return static_cast<double>(conflicting) / static_cast<double>(pairs);
}

std::string export_stream(const TxStream& txs) {
  std::ostringstream out;
  for (const Transaction& tx : txs) {
    out << tx.id << ',' << tx.submit_time_us << ',' << to_string(tx.op.kind)
        << ',' << tx.op.a;
    if (!tx.op.b.empty()) out << ';' << tx.op.b;
    out << ',' << tx.op.amount << '\n';
  }
  return out.str();
}

namespace {

std::uint64_t parse_u64_field(std::string_view field, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument(std::string("import_stream: bad ") + what +
                                " field: " + std::string(field));
  return value;
}

}  // namespace

TxStream import_stream(std::string_view text) {
  TxStream stream;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 5)
      throw std::invalid_argument("import_stream: line " +
                                  std::to_string(line_no) +
                                  ": expected 5 comma-separated fields");

    TxId id = parse_u64_field(fields[0], "id");
    auto submit = static_cast<TimeUs>(parse_u64_field(fields[1], "submit_time_us"));
    auto kind = op_kind_from_string(fields[2]);
    if (!kind)
      throw std::invalid_argument("import_stream: line " +
                                  std::to_string(line_no) +
                                  ": unknown op_kind: " + std::string(fields[2]));
    std::string_view wallets = fields[3];
    Operation op;
    op.kind = *kind;
    std::size_t semi = wallets.find(';');
    if (semi == std::string_view::npos) {
      op.a = std::string(wallets);
    } else {
      op.a = std::string(wallets.substr(0, semi));
      op.b = std::string(wallets.substr(semi + 1));
    }
    op.amount = static_cast<Money>(parse_u64_field(fields[4], "amount"));
    stream.push_back(make_transaction(id, submit, std::move(op)));
  }
  return stream;
}

std::uint64_t stream_checksum(const TxStream& txs) {
  Fnv1a64 hash;
  hash.update_str(export_stream(txs));
  return hash.digest();
}

}  // namespace conchain
