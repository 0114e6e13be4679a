// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "conchain/dependency.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace conchain {

namespace {

// Both inputs sorted. Footprints have at most two entries, so this is a
// handful of comparisons.
template <typename T>
bool sorted_intersects(const std::vector<T>& lhs, const std::vector<T>& rhs) {
  auto l = lhs.begin();
  auto r = rhs.begin();
  while (l != lhs.end() && r != rhs.end()) {
    if (*l < *r) {
      ++l;
    } else if (*r < *l) {
      ++r;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

bool conflicts(const Transaction& t1, const Transaction& t2) {
  if (t1.id == t2.id)
    throw std::invalid_argument("conflicts() requires distinct transaction ids");
  return sorted_intersects(t1.rw.writes, t2.rw.writes) ||
         sorted_intersects(t1.rw.writes, t2.rw.reads) ||
         sorted_intersects(t1.rw.reads, t2.rw.writes);
}

bool ConflictGraph::has_node(TxId id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

bool ConflictGraph::has_edge(TxId a, TxId b) const {
  if (a == b) return false;
  if (a > b) std::swap(a, b);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

namespace {

ConflictGraph build_graph_impl(const std::vector<const Transaction*>& txs) {
  ConflictGraph graph;
  graph.nodes.reserve(txs.size());
  for (const Transaction* tx : txs) graph.nodes.push_back(tx->id);
  std::sort(graph.nodes.begin(), graph.nodes.end());
  if (std::adjacent_find(graph.nodes.begin(), graph.nodes.end()) !=
      graph.nodes.end())
    throw std::invalid_argument("build_conflict_graph: duplicate tx ids");

  // Inverted index: wallet -> (ids reading it, ids writing it).
  struct WalletUse {
    std::vector<TxId> readers;
    std::vector<TxId> writers;
  };
  std::map<WalletId, WalletUse> index;
  for (const Transaction* tx : txs) {
    for (const WalletId& w : tx->rw.reads) index[w].readers.push_back(tx->id);
    for (const WalletId& w : tx->rw.writes) index[w].writers.push_back(tx->id);
  }

  std::set<std::pair<TxId, TxId>> edges;
  auto add_edge = [&edges](TxId a, TxId b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    edges.emplace(a, b);
  };
  for (const auto& [wallet, use] : index) {
    for (std::size_t i = 0; i < use.writers.size(); ++i) {
      for (std::size_t j = i + 1; j < use.writers.size(); ++j)
        add_edge(use.writers[i], use.writers[j]);
      for (TxId reader : use.readers) add_edge(use.writers[i], reader);
    }
  }

  graph.edges.assign(edges.begin(), edges.end());
  for (const auto& [a, b] : graph.edges) {
    graph.adjacency[a].push_back(b);
    graph.adjacency[b].push_back(a);
  }
  for (auto& [id, neighbors] : graph.adjacency)
    std::sort(neighbors.begin(), neighbors.end());
  return graph;
}

}  // namespace

ConflictGraph build_conflict_graph(const std::vector<Transaction>& txs) {
  std::vector<const Transaction*> ptrs;
  ptrs.reserve(txs.size());
  for (const Transaction& tx : txs) ptrs.push_back(&tx);
  return build_graph_impl(ptrs);
}

ConflictGraph build_conflict_graph(const std::vector<const Transaction*>& txs) {
  return build_graph_impl(txs);
}

std::string to_dot(const ConflictGraph& graph) {
  std::ostringstream out;
  out << "graph conflicts {\n";
  for (TxId id : graph.nodes) out << "  " << id << ";\n";
  for (const auto& [a, b] : graph.edges) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

std::uint32_t WalletInterner::intern(const WalletId& wallet) {
  auto [it, inserted] =
      ids_.emplace(wallet, static_cast<std::uint32_t>(ids_.size()));
  return it->second;
}

Footprint make_footprint(const RwSets& rw, WalletInterner& interner) {
  Footprint fp;
  fp.reads.reserve(rw.reads.size());
  fp.writes.reserve(rw.writes.size());
  for (const WalletId& w : rw.reads) fp.reads.push_back(interner.intern(w));
  for (const WalletId& w : rw.writes) fp.writes.push_back(interner.intern(w));
  std::sort(fp.reads.begin(), fp.reads.end());
  std::sort(fp.writes.begin(), fp.writes.end());
  Fnv1a64 hash;
  hash.update_u64_be(fp.reads.size());
  for (std::uint32_t w : fp.reads) hash.update_u64_be(w);
  hash.update_u64_be(fp.writes.size());
  for (std::uint32_t w : fp.writes) hash.update_u64_be(w);
  fp.signature = hash.digest();
  return fp;
}

bool footprints_conflict(const Footprint& f1, const Footprint& f2) {
  return sorted_intersects(f1.writes, f2.writes) ||
         sorted_intersects(f1.writes, f2.reads) ||
         sorted_intersects(f1.reads, f2.writes);
}

std::vector<std::pair<WalletId, Money>> worst_case_debits(
    const Transaction& tx, const LedgerState& state) {
  switch (tx.op.kind) {
    case OpKind::SendPayment:
    case OpKind::WriteCheck:
      if (tx.op.amount > 0) return {{tx.op.a, tx.op.amount}};
      return {};
    case OpKind::Amalgamate:
      return {{tx.op.a, total_balance(state, tx.op.a)}};
    default:
      return {};
  }
}

Money AdmissionBook::pending_debit(const WalletId& wallet) const {
  auto it = pending_.find(wallet);
  return it == pending_.end() ? 0 : it->second;
}

void AdmissionBook::admit(const Transaction& tx, const LedgerState& state) {
  admitted_.insert(tx.id);
  auto debits = worst_case_debits(tx, state);
  for (const auto& [wallet, amount] : debits) pending_[wallet] += amount;
  if (!debits.empty()) recorded_.emplace(tx.id, std::move(debits));
}

void AdmissionBook::settle(TxId id) {
  auto it = recorded_.find(id);
  if (it == recorded_.end()) return;
  for (const auto& [wallet, amount] : it->second) {
    auto pending = pending_.find(wallet);
    pending->second -= amount;
    if (pending->second <= 0) pending_.erase(pending);
  }
  recorded_.erase(it);
}

Validity classify_tx(const Transaction& tx, const LedgerState& state,
                     const AdmissionBook& book) {
  for (const WalletId& wallet : tx.rw.reads) {
    if (!has_wallet(state, wallet))
      return Validity::fake(FakeReason::UnknownWallet);
  }
  if (book.is_admitted(tx.id)) return Validity::fake(FakeReason::DuplicateId);
  for (const auto& [wallet, debit] : worst_case_debits(tx, state)) {
    if (book.pending_debit(wallet) + debit > total_balance(state, wallet))
      return Validity::fake(FakeReason::OverCommitted);
  }
  return Validity::ok();
}

}  // namespace conchain
