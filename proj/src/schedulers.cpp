// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
#include "conchain/schedulers.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace conchain {

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Fifo: return "fifo";
    case Scheme::Timestamp: return "timestamp";
    case Scheme::Grouped: return "grouped";
    case Scheme::Locking: return "locking";
    case Scheme::Conchain: return "conchain";
  }
  return "unknown";
}

std::optional<Scheme> scheme_from_string(std::string_view token) {
  for (Scheme s : all_schemes()) {
    if (token == to_string(s)) return s;
  }
  return std::nullopt;
}

std::vector<Scheme> all_schemes() {
  return {Scheme::Fifo, Scheme::Timestamp, Scheme::Grouped, Scheme::Locking,
          Scheme::Conchain};
}

namespace {

void require_valid_input(const PendingView& pending, std::uint32_t workers) {
  if (workers == 0)
    throw std::invalid_argument("scheduler: workers must be at least 1");
  std::unordered_set<TxId> seen;
  seen.reserve(pending.size());
  for (const Transaction* tx : pending) {
    if (!seen.insert(tx->id).second)
      throw std::invalid_argument("scheduler: duplicate pending tx id " +
                                  std::to_string(tx->id));
  }
}

Schedule chunk_rounds(const std::vector<const Transaction*>& order,
                      std::uint32_t workers) {
  Schedule schedule;
  for (std::size_t i = 0; i < order.size(); i += workers) {
    std::vector<Assignment> round;
    for (std::size_t j = i; j < order.size() && j < i + workers; ++j)
      round.push_back(Assignment{order[j]->id,
                                 static_cast<std::uint32_t>(j - i)});
    schedule.rounds.push_back(std::move(round));
  }
  return schedule;
}

bool timestamp_before(const Transaction* a, const Transaction* b) {
  if (a->submit_time_us != b->submit_time_us)
    return a->submit_time_us < b->submit_time_us;
  return a->id < b->id;
}

}  // namespace

Schedule schedule_fifo(const PendingView& pending, std::uint32_t workers) {
  require_valid_input(pending, workers);
  return chunk_rounds(pending, workers);
}

Schedule schedule_timestamp(const PendingView& pending, std::uint32_t workers) {
  require_valid_input(pending, workers);
  PendingView order = pending;
  std::stable_sort(order.begin(), order.end(), timestamp_before);
  return chunk_rounds(order, workers);
}

Schedule schedule_grouped(const PendingView& pending, std::uint32_t workers) {
  require_valid_input(pending, workers);
  PendingView reads;
  PendingView writes;
  for (const Transaction* tx : pending)
    (tx->tx_type == TxType::Read ? reads : writes).push_back(tx);
  std::stable_sort(reads.begin(), reads.end(), timestamp_before);
  std::stable_sort(writes.begin(), writes.end(), timestamp_before);

  Schedule schedule = chunk_rounds(reads, workers);
  Schedule write_rounds = chunk_rounds(writes, workers);
  for (auto& round : write_rounds.rounds)
    schedule.rounds.push_back(std::move(round));
  return schedule;
}

bool LockTable::available(const Transaction& tx) const {
  for (const WalletId& wallet : tx.rw.reads) {
    auto it = locks_.find(wallet);
    if (it != locks_.end() && it->second != tx.id) return false;
  }
  return true;
}

void LockTable::acquire(const Transaction& tx) {
  for (const WalletId& wallet : tx.rw.reads) locks_[wallet] = tx.id;
}

void LockTable::release(const Transaction& tx) {
  for (const WalletId& wallet : tx.rw.reads) {
    auto it = locks_.find(wallet);
    if (it != locks_.end() && it->second == tx.id) locks_.erase(it);
  }
}

Schedule schedule_locking(const PendingView& pending, std::uint32_t workers,
                          LockTable& locks) {
  require_valid_input(pending, workers);
  PendingView order = pending;
  std::stable_sort(order.begin(), order.end(), timestamp_before);

  std::vector<const Transaction*> dispatched;
  Schedule schedule;
  for (const Transaction* tx : order) {
    if (locks.available(*tx)) {
      locks.acquire(*tx);
      dispatched.push_back(tx);
    } else {
      schedule.held.push_back(tx->id);
    }
  }
  schedule.rounds = chunk_rounds(dispatched, workers).rounds;
  return schedule;
}

namespace {

struct Candidate {
  const Transaction* tx;
  const Footprint* fp;  // null in graph mode
  std::uint32_t age;
  bool dispatched = false;
};

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.age != b.age) return a.age > b.age;
  if (a.tx->submit_time_us != b.tx->submit_time_us)
    return a.tx->submit_time_us < b.tx->submit_time_us;
  return a.tx->id < b.tx->id;
}

// Shared greedy core. fits(candidate, round_members) decides round
// membership; signatures let identical footprints that already failed
// against the current round be skipped in O(1).
template <typename Fits>
Schedule greedy_rounds(std::vector<Candidate>& candidates,
                       std::uint32_t workers, HoldState& hold,
                       std::uint32_t rounds_per_tick, Fits fits) {
  std::sort(candidates.begin(), candidates.end(), candidate_before);

  Schedule schedule;
  std::size_t remaining = candidates.size();
  while (remaining > 0 &&
         (rounds_per_tick == 0 || schedule.rounds.size() < rounds_per_tick)) {
    std::vector<const Candidate*> members;
    std::unordered_set<std::uint64_t> failed_sigs;
    for (Candidate& cand : candidates) {
      if (cand.dispatched) continue;
      if (members.size() == workers) break;
      if (cand.fp != nullptr && failed_sigs.count(cand.fp->signature)) continue;
      if (fits(cand, members)) {
        cand.dispatched = true;
        members.push_back(&cand);
      } else if (cand.fp != nullptr) {
        failed_sigs.insert(cand.fp->signature);
      }
    }
    if (members.empty()) break;  // cannot happen: an empty round fits anything
    remaining -= members.size();

    std::vector<Assignment> round;
    round.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      round.push_back(
          Assignment{members[i]->tx->id, static_cast<std::uint32_t>(i)});
    schedule.rounds.push_back(std::move(round));
  }

  for (const Candidate& cand : candidates) {
    if (cand.dispatched) {
      hold.ages.erase(cand.tx->id);
    } else {
      schedule.held.push_back(cand.tx->id);
      hold.ages[cand.tx->id] += 1;
    }
  }
  return schedule;
}

}  // namespace

Schedule schedule_conchain(const PendingView& pending, std::uint32_t workers,
                           const ConflictGraph& graph, HoldState& hold,
                           std::uint32_t rounds_per_tick) {
  require_valid_input(pending, workers);
  for (const Transaction* tx : pending) {
    if (!graph.has_node(tx->id))
      throw std::invalid_argument("schedule_conchain: graph missing pending id " +
                                  std::to_string(tx->id));
  }

  std::vector<Candidate> candidates;
  candidates.reserve(pending.size());
  for (const Transaction* tx : pending)
    candidates.push_back(Candidate{tx, nullptr, hold.age(tx->id)});

  auto fits = [&graph](const Candidate& cand,
                       const std::vector<const Candidate*>& members) {
    for (const Candidate* member : members) {
      if (graph.has_edge(cand.tx->id, member->tx->id)) return false;
    }
    return true;
  };
  return greedy_rounds(candidates, workers, hold, rounds_per_tick, fits);
}

Schedule schedule_conchain_footprints(
    const PendingView& pending, const std::vector<const Footprint*>& footprints,
    std::uint32_t workers, HoldState& hold, std::uint32_t rounds_per_tick) {
  if (footprints.size() != pending.size())
    throw std::invalid_argument(
        "schedule_conchain_footprints: footprint count mismatch");
  require_valid_input(pending, workers);

  std::vector<Candidate> candidates;
  candidates.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i)
    candidates.push_back(
        Candidate{pending[i], footprints[i], hold.age(pending[i]->id)});

  auto fits = [](const Candidate& cand,
                 const std::vector<const Candidate*>& members) {
    for (const Candidate* member : members) {
      if (footprints_conflict(*cand.fp, *member->fp)) return false;
    }
    return true;
  };
  return greedy_rounds(candidates, workers, hold, rounds_per_tick, fits);
}

}  // namespace conchain
