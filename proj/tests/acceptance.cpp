// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
//
// Acceptance suite. Each criterion prints one pass/fail line; the
// process exits nonzero if any criterion fails. Workload and engine
// constants are pinned here so the runs are reproducible.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "conchain/attack.hpp"
#include "conchain/dependency.hpp"
#include "conchain/engine.hpp"
#include "conchain/report.hpp"
#include "conchain/rng.hpp"
#include "conchain/workload.hpp"

using namespace conchain;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// ---------------------------------------------------------------------------
// Pinned acceptance configuration
// ---------------------------------------------------------------------------

constexpr std::uint64_t kSeeds = 10;          // seeds 1..10
constexpr std::uint64_t kAccounts = 400;
constexpr std::uint64_t kHotAccounts = 5;
constexpr std::uint64_t kPerfTxs = 9000;
const std::vector<double> kHotKnots = {0.25, 0.5, 0.75};

WorkloadConfig perf_workload(double hot_probability, std::uint64_t seed) {
  WorkloadConfig config;
  config.n_accounts = kAccounts;
  config.hot_accounts = kHotAccounts;
  config.hot_probability = hot_probability;
  config.n_txs = kPerfTxs;
  config.arrival_rate = 1000.0;
  config.seed = seed;
  return config;
}

EngineConfig perf_engine(std::uint64_t seed) {
  EngineConfig config;  // workers 4, 50 ms tick, unbounded rounds
  config.seed = seed;
  return config;
}

std::uint64_t aborted_conflicts(const MetricsReport& report) {
  auto it = report.fail_breakdown.find("aborted_conflict");
  return it == report.fail_breakdown.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Shared run cache: (hot knob, seed, scheme) -> metrics + read latency
// ---------------------------------------------------------------------------

struct PerfRun {
  MetricsReport report;
  double read_latency_s = 0.0;
};

class PerfBench {
 public:
  const PerfRun& run(double hot, std::uint64_t seed, Scheme scheme) {
    auto key = std::make_tuple(hot, seed, scheme);
    auto it = runs_.find(key);
    if (it != runs_.end()) return it->second;

    const TxStream& stream = stream_for(hot, seed);
    LedgerState initial = make_initial_state(perf_workload(hot, seed));
    RunResult result =
        run_simulation(stream, scheme, perf_engine(seed), initial, "RW");

    PerfRun entry;
    entry.report = result.report;
    double sum = 0;
    std::uint64_t reads = 0;
    for (const Transaction& tx : stream) {
      if (tx.tx_type != TxType::Read) continue;
      sum += us_to_seconds(result.per_tx.at(tx.id).latency_us);
      ++reads;
    }
    entry.read_latency_s = reads == 0 ? 0.0 : sum / static_cast<double>(reads);
    return runs_.emplace(key, std::move(entry)).first->second;
  }

  double contention(double hot, std::uint64_t seed) {
    auto key = std::make_pair(hot, seed);
    auto it = contention_.find(key);
    if (it != contention_.end()) return it->second;
    double value = contention_index(stream_for(hot, seed));
    return contention_.emplace(key, value).first->second;
  }

  double mean(double hot, Scheme scheme,
              double (*extract)(const PerfRun&)) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed)
      sum += extract(run(hot, seed, scheme));
    return sum / static_cast<double>(kSeeds);
  }

 private:
  const TxStream& stream_for(double hot, std::uint64_t seed) {
    auto key = std::make_pair(hot, seed);
    auto it = streams_.find(key);
    if (it != streams_.end()) return it->second;
    return streams_.emplace(key, generate_workload(perf_workload(hot, seed)))
        .first->second;
  }

  std::map<std::pair<double, std::uint64_t>, TxStream> streams_;
  std::map<std::pair<double, std::uint64_t>, double> contention_;
  std::map<std::tuple<double, std::uint64_t, Scheme>, PerfRun> runs_;
};

PerfBench bench;

int failures = 0;

void report(int criterion, bool pass, const std::string& detail,
            double elapsed_s) {
  std::printf("[%s] criterion %d: %s (%.1f s)\n", pass ? "PASS" : "FAIL",
              criterion, detail.c_str(), elapsed_s);
  std::fflush(stdout);
  if (!pass) ++failures;
}

// ---------------------------------------------------------------------------
// 1. Conflict-graph oracle equivalence
// ---------------------------------------------------------------------------

TxStream random_instance(SplitMix64& rng) {
  std::size_t n = 1 + rng.next_below(200);
  std::uint64_t wallets = 2 + rng.next_below(24);
  TxStream txs;
  txs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    WalletId a = "w" + std::to_string(rng.next_below(wallets));
    Operation op;
    switch (rng.next_below(6)) {
      case 0: op = Operation::query(a); break;
      case 1: op = Operation::deposit_checking(a, 1); break;
      case 2: op = Operation::transact_savings(a, 1); break;
      case 3: op = Operation::write_check(a, 1); break;
      default: {
        WalletId b = a;
        while (b == a) b = "w" + std::to_string(rng.next_below(wallets));
        op = rng.next_bernoulli(0.5) ? Operation::send_payment(a, b, 1)
                                     : Operation::amalgamate(a, b);
      }
    }
    txs.push_back(make_transaction(i, static_cast<TimeUs>(i), op));
  }
  return txs;
}

void criterion_1() {
  auto start = Clock::now();
  SplitMix64 rng(1001);
  std::uint64_t instances = 0;
  bool pass = true;
  for (int trial = 0; trial < 1000; ++trial) {
    TxStream txs = random_instance(rng);
    ConflictGraph graph = build_conflict_graph(txs);
    std::set<std::pair<TxId, TxId>> expected;
    for (std::size_t i = 0; i < txs.size(); ++i) {
      for (std::size_t j = i + 1; j < txs.size(); ++j) {
        if (conflicts(txs[i], txs[j]))
          expected.emplace(std::min(txs[i].id, txs[j].id),
                           std::max(txs[i].id, txs[j].id));
      }
    }
    std::set<std::pair<TxId, TxId>> got(graph.edges.begin(), graph.edges.end());
    if (got != expected) {
      pass = false;
      break;
    }
    ++instances;
  }
  double elapsed = seconds_since(start);
  pass = pass && elapsed < 30.0;
  std::ostringstream detail;
  detail << "conflict graph matches brute force on " << instances
         << "/1000 random instances";
  report(1, pass, detail.str(), elapsed);
}

// ---------------------------------------------------------------------------
// 2. Serializability of the dependency scheduler
// ---------------------------------------------------------------------------

void criterion_2() {
  auto start = Clock::now();
  bool pass = true;
  std::uint64_t checked = 0;
  for (std::uint64_t seed = 1; seed <= 100 && pass; ++seed) {
    WorkloadConfig workload = perf_workload(0.5, seed);
    workload.n_txs = 2000;
    TxStream stream = generate_workload(workload);
    LedgerState initial = make_initial_state(workload);
    RunResult result =
        run_simulation(stream, Scheme::Conchain, perf_engine(seed), initial, "RW");
    LedgerState replayed = replay_serial(stream, result.commit_order, initial);
    if (!(replayed == result.final_state)) pass = false;
    ++checked;
  }
  double elapsed = seconds_since(start);
  pass = pass && elapsed < 60.0;
  std::ostringstream detail;
  detail << "conchain final state equals serial replay on " << checked
         << "/100 seeds";
  report(2, pass, detail.str(), elapsed);
}

// ---------------------------------------------------------------------------
// 3. Conflict-free rounds eliminate OCC aborts
// ---------------------------------------------------------------------------

void criterion_3() {
  auto start = Clock::now();
  bool pass = true;
  std::uint64_t conchain_aborts = 0;
  std::uint64_t gated = 0;
  for (double hot : kHotKnots) {
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      conchain_aborts += aborted_conflicts(bench.run(hot, seed, Scheme::Conchain).report);
      double ci = bench.contention(hot, seed);
      if (ci > 0.05) {
        ++gated;
        if (aborted_conflicts(bench.run(hot, seed, Scheme::Fifo).report) == 0)
          pass = false;
      }
    }
  }
  pass = pass && conchain_aborts == 0 && gated > 0;
  std::ostringstream detail;
  detail << "conchain aborted_conflict total " << conchain_aborts
         << " across " << kHotKnots.size() * kSeeds
         << " workloads; fifo conflicts on all " << gated
         << " workloads above the 0.05 contention gate";
  report(3, pass, detail.str(), seconds_since(start));
}

// ---------------------------------------------------------------------------
// 4. Comparison-table direction: success rates
// ---------------------------------------------------------------------------

void criterion_4() {
  auto start = Clock::now();
  double conchain_mean = 0;
  double fifo_mean = 0;
  double conchain_min = 1.0;
  for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
    double cc = bench.run(0.5, seed, Scheme::Conchain).report.success_rate;
    conchain_mean += cc;
    conchain_min = std::min(conchain_min, cc);
    fifo_mean += bench.run(0.5, seed, Scheme::Fifo).report.success_rate;
  }
  conchain_mean /= kSeeds;
  fifo_mean /= kSeeds;
  double elapsed = seconds_since(start);
  bool pass = conchain_mean > fifo_mean && conchain_min >= 0.80 &&
              elapsed < 120.0;
  std::ostringstream detail;
  detail.precision(4);
  detail << std::fixed << "mean success conchain " << conchain_mean
         << " > fifo " << fifo_mean << "; conchain per-seed min "
         << conchain_min << " >= 0.80";
  report(4, pass, detail.str(), elapsed);
}

// ---------------------------------------------------------------------------
// 5. Read-only workload: perfect success, then calibrated noise
// ---------------------------------------------------------------------------

void criterion_5() {
  auto start = Clock::now();
  bool pass = true;

  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    WorkloadConfig workload = perf_workload(0.5, seed);
    workload.mix = OpMix::read_only();
    workload.n_txs = 10'000;
    TxStream stream = generate_workload(workload);
    LedgerState initial = make_initial_state(workload);
    RunResult result =
        run_simulation(stream, Scheme::Conchain, perf_engine(seed), initial, "R");
    if (result.report.success_rate != 1.0) pass = false;
  }

  double mean_failures = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WorkloadConfig workload = perf_workload(0.5, seed);
    workload.mix = OpMix::read_only();
    workload.n_txs = 10'000;
    TxStream stream = generate_workload(workload);
    LedgerState initial = make_initial_state(workload);
    EngineConfig engine = perf_engine(seed);
    engine.infra_failure_prob = 0.0026;
    RunResult result =
        run_simulation(stream, Scheme::Conchain, engine, initial, "R");
    mean_failures += static_cast<double>(result.report.fail);
  }
  mean_failures /= 20.0;
  // 26 per 10000 expected; accept within +/-50%.
  pass = pass && mean_failures >= 13.0 && mean_failures <= 39.0;
  std::ostringstream detail;
  detail.precision(1);
  detail << std::fixed
         << "read-only success exactly 1.0 with clean infrastructure; mean "
         << mean_failures << " failures/10000 at noise 0.0026 (target 26 +/- 50%)";
  report(5, pass, detail.str(), seconds_since(start));
}

// ---------------------------------------------------------------------------
// 6. Ordering-scheme tradeoffs across the hot-probability sweep
// ---------------------------------------------------------------------------

void criterion_6() {
  auto start = Clock::now();
  bool pass = true;
  std::ostringstream detail;
  detail.precision(4);
  detail << std::fixed;
  for (double hot : kHotKnots) {
    auto ac = [](const PerfRun& r) {
      return static_cast<double>(
          r.report.fail_breakdown.count("aborted_conflict")
              ? r.report.fail_breakdown.at("aborted_conflict")
              : 0);
    };
    auto latency = [](const PerfRun& r) { return r.report.mean_latency_s; };
    auto read_latency = [](const PerfRun& r) { return r.read_latency_s; };

    double fifo_ac = bench.mean(hot, Scheme::Fifo, ac);
    double ts_ac = bench.mean(hot, Scheme::Timestamp, ac);
    double lock_ac = bench.mean(hot, Scheme::Locking, ac);
    double lock_lat = bench.mean(hot, Scheme::Locking, latency);
    double ts_lat = bench.mean(hot, Scheme::Timestamp, latency);
    double grouped_read = bench.mean(hot, Scheme::Grouped, read_latency);
    double fifo_read = bench.mean(hot, Scheme::Fifo, read_latency);

    bool a = ts_ac <= fifo_ac;
    bool b = lock_ac < fifo_ac && lock_lat > ts_lat;
    bool c = grouped_read < fifo_read;
    pass = pass && a && b && c;
    detail << "[hot " << hot << ": ts_ac " << ts_ac << " <= fifo_ac " << fifo_ac
           << "; lock_ac " << lock_ac << " < fifo_ac, lock_lat " << lock_lat
           << " > ts_lat " << ts_lat << "; grouped_read " << grouped_read
           << " < fifo_read " << fifo_read << "] ";
  }
  report(6, pass, detail.str(), seconds_since(start));
}

// ---------------------------------------------------------------------------
// 7. Committed throughput
// ---------------------------------------------------------------------------

void criterion_7() {
  auto start = Clock::now();
  auto tps = [](const PerfRun& r) { return r.report.tps_committed; };
  double conchain_tps = bench.mean(0.5, Scheme::Conchain, tps);
  double fifo_tps = bench.mean(0.5, Scheme::Fifo, tps);
  bool pass = conchain_tps > fifo_tps;
  std::ostringstream detail;
  detail.precision(1);
  detail << std::fixed << "mean committed tps conchain " << conchain_tps
         << " > fifo " << fifo_tps;
  report(7, pass, detail.str(), seconds_since(start));
}

// ---------------------------------------------------------------------------
// 8. Defense suite
// ---------------------------------------------------------------------------

AttackConfig acceptance_attack(AttackScenario scenario, std::uint64_t seed) {
  AttackConfig config;
  config.scenario = scenario;
  config.honest = perf_workload(0.5, seed);
  config.honest.n_txs = 2000;
  config.intensity = 10.0;
  config.target_wallets = 2;
  config.seed = seed + 5000;
  return config;
}

void criterion_8() {
  auto start = Clock::now();
  bool pass = true;
  std::uint64_t fake_commits = 0;
  double ddos_defended_min = 1.0;
  bool withholding_clean = true;
  bool delta_strict = true;
  std::ostringstream deltas;
  deltas.precision(4);
  deltas << std::fixed;

  for (auto scenario :
       {AttackScenario::DoubleSpend, AttackScenario::BlockWithholding,
        AttackScenario::Balance, AttackScenario::Ddos}) {
    double defended_mean = 0;
    double undefended_mean = 0;
    for (std::uint64_t seed = 1; seed <= kSeeds; ++seed) {
      AttackConfig config = acceptance_attack(scenario, seed);
      AttackArms arms = run_attack(config, perf_engine(seed));
      fake_commits += arms.defended_report.fake_committed;
      if (!arms.defended_report.verdict_pass) pass = false;
      defended_mean += arms.defended_report.honest_success_rate;
      undefended_mean += arms.undefended_report.honest_success_rate;

      if (scenario == AttackScenario::BlockWithholding) {
        std::set<TxId> attacker_ids;
        for (const Transaction& tx : arms.stream)
          if (tx.origin.is_attacker()) attacker_ids.insert(tx.id);
        for (const EventRecord& ev : arms.defended.events) {
          if (ev.kind == EventKind::Dispatch && attacker_ids.count(ev.tx))
            withholding_clean = false;
        }
      }
      if (scenario == AttackScenario::Ddos) {
        ddos_defended_min = std::min(
            ddos_defended_min, arms.defended_report.honest_success_rate);
      }
    }
    defended_mean /= kSeeds;
    undefended_mean /= kSeeds;
    // Defense delta: defended honest success strictly beats undefended
    // in every scenario.
    if (!(defended_mean > undefended_mean)) delta_strict = false;
    deltas << to_string(scenario) << " " << defended_mean << ">"
           << undefended_mean << " ";
    if (scenario == AttackScenario::Ddos &&
        !(defended_mean > undefended_mean && ddos_defended_min >= 0.90))
      pass = false;
  }
  double elapsed = seconds_since(start);
  pass = pass && fake_commits == 0 && withholding_clean && delta_strict &&
         ddos_defended_min >= 0.90 && elapsed < 180.0;
  std::ostringstream detail;
  detail.precision(4);
  detail << std::fixed << "fake commits " << fake_commits
         << " across 4 scenarios x 10 seeds; withholding fabrications "
         << (withholding_clean ? "never dispatched" : "DISPATCHED")
         << "; ddos defended min " << ddos_defended_min
         << "; honest-success deltas: " << deltas.str();
  report(8, pass, detail.str(), elapsed);
}

// ---------------------------------------------------------------------------
// 9. Determinism of report files and chain digests
// ---------------------------------------------------------------------------

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void criterion_9() {
  auto start = Clock::now();
  fs::path base = fs::temp_directory_path() / "conchain_acceptance_det";
  fs::remove_all(base);

  std::string config_text =
      "workload.n_accounts = 400\n"
      "workload.hot_accounts = 5\n"
      "workload.hot_probability = 0.5\n"
      "workload.n_txs = 9000\n"
      "workload.mix = RW\n"
      "workload.seed = 1\n"
      "engine.seed = 1\n"
      "schemes = conchain, fifo\n"
      "attack.scenario = ddos\n"
      "attack.intensity = 5\n"
      "attack.seed = 1\n";

  bool pass = true;
  std::vector<std::vector<std::string>> files(2);
  for (int round = 0; round < 2; ++round) {
    ExperimentConfig config = parse_config_text(config_text, "acceptance",
                                                /*apply_env=*/false);
    config.workload.n_txs = 9000;
    config.output.path = (base / std::to_string(round)).string();
    for (const std::string& f : cmd_compare(config)) files[round].push_back(f);
    ExperimentConfig attack_config = config;
    attack_config.attack->honest.n_txs = 1000;
    attack_config.workload.n_txs = 1000;
    attack_config.attack->honest = attack_config.workload;
    for (const std::string& f : cmd_attack(attack_config))
      files[round].push_back(f);
  }
  if (files[0].size() != files[1].size()) pass = false;
  std::size_t compared = 0;
  for (std::size_t i = 0; pass && i < files[0].size(); ++i) {
    if (slurp(files[0][i]) != slurp(files[1][i])) pass = false;
    ++compared;
  }
  // Chain digests repeat across identical in-process runs too.
  WorkloadConfig workload = perf_workload(0.5, 1);
  TxStream stream = generate_workload(workload);
  LedgerState initial = make_initial_state(workload);
  RunResult a = run_simulation(stream, Scheme::Conchain, perf_engine(1), initial);
  RunResult b = run_simulation(stream, Scheme::Conchain, perf_engine(1), initial);
  if (a.report.chain_digest != b.report.chain_digest) pass = false;
  fs::remove_all(base);
  std::ostringstream detail;
  detail << "byte-identical outputs across repeated runs (" << compared
         << " files) and matching chain digests";
  report(9, pass, detail.str(), seconds_since(start));
}

}  // namespace

int main() {
  std::printf("acceptance suite: workers=4, accounts=%llu (hot %llu), "
              "%llu txs, seeds 1..%llu\n",
              static_cast<unsigned long long>(kAccounts),
              static_cast<unsigned long long>(kHotAccounts),
              static_cast<unsigned long long>(kPerfTxs),
              static_cast<unsigned long long>(kSeeds));
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0) {
    std::printf("all 9 criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
