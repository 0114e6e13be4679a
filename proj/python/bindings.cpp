// Copyright 2026 the conchain-sim authors. Licensed under the Apache
// License, Version 2.0. See the LICENSE file at the root of this
// distribution or at http://www.apache.org/licenses/LICENSE-2.0
//
// Python bindings for the core operations: workload generation,
// simulation runs, and attack experiments.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>

#include "conchain/attack.hpp"
#include "conchain/dependency.hpp"
#include "conchain/engine.hpp"
#include "conchain/workload.hpp"

namespace py = pybind11;
using namespace conchain;

namespace {

Scheme parse_scheme(const std::string& token) {
  auto scheme = scheme_from_string(token);
  if (!scheme)
    throw py::value_error("unknown scheme '" + token +
                          "' (expected fifo|timestamp|grouped|locking|conchain)");
  return *scheme;
}

AttackScenario parse_scenario(const std::string& token) {
  auto scenario = attack_scenario_from_string(token);
  if (!scenario)
    throw py::value_error(
        "unknown scenario '" + token +
        "' (expected double_spend|block_withholding|balance|ddos)");
  return *scenario;
}

py::list mix_to_list(const OpMix& mix) {
  py::list weights;
  for (double w : mix.weights) weights.append(w);
  return weights;
}

void mix_from_object(OpMix& mix, const py::object& value) {
  if (py::isinstance<py::str>(value)) {
    std::string preset = value.cast<std::string>();
    if (preset == "R") {
      mix = OpMix::read_only();
    } else if (preset == "RW") {
      mix = OpMix::read_write();
    } else {
      throw py::value_error("mix preset must be 'R' or 'RW'");
    }
    return;
  }
  auto weights = value.cast<std::vector<double>>();
  if (weights.size() != kOpKindCount)
    throw py::value_error("mix weights must have exactly 6 entries");
  for (std::size_t i = 0; i < kOpKindCount; ++i) mix.weights[i] = weights[i];
}

py::dict per_tx_dict(const RunResult& result) {
  py::dict out;
  for (const auto& [id, outcome] : result.per_tx) {
    out[py::int_(id)] = py::make_tuple(std::string(to_string(outcome.status)),
                                       us_to_seconds(outcome.latency_us));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deterministic ordering-scheme simulator for contention and "
            "attack experiments on a banking workload";

  py::class_<Transaction>(m, "Transaction")
      .def_readonly("id", &Transaction::id)
      .def_readonly("submit_time_us", &Transaction::submit_time_us)
      .def_property_readonly(
          "op_kind",
          [](const Transaction& tx) { return std::string(to_string(tx.op.kind)); })
      .def_property_readonly(
          "wallets",
          [](const Transaction& tx) {
            py::list wallets;
            wallets.append(tx.op.a);
            if (!tx.op.b.empty()) wallets.append(tx.op.b);
            return wallets;
          })
      .def_property_readonly("amount",
                             [](const Transaction& tx) { return tx.op.amount; })
      .def_property_readonly(
          "is_read",
          [](const Transaction& tx) { return tx.tx_type == TxType::Read; })
      .def_property_readonly(
          "is_attacker",
          [](const Transaction& tx) { return tx.origin.is_attacker(); })
      .def("__repr__", [](const Transaction& tx) {
        return "<Transaction id=" + std::to_string(tx.id) + " " +
               to_string(tx.op.kind) + ">";
      });

  py::class_<LedgerState>(m, "LedgerState")
      .def_property_readonly(
          "n_wallets",
          [](const LedgerState& s) { return s.accounts.size(); })
      .def("balance",
           [](const LedgerState& s, const WalletId& wallet) {
             return total_balance(s, wallet);
           })
      .def("total_supply", &sum_of_balances);

  py::class_<WorkloadConfig>(m, "WorkloadConfig")
      .def(py::init([](std::uint64_t n_accounts, std::uint64_t n_txs,
                       std::uint64_t hot_accounts, double hot_probability,
                       double arrival_rate, std::uint64_t seed,
                       const py::object& mix, Money initial_checking,
                       Money initial_savings) {
             WorkloadConfig config;
             config.n_accounts = n_accounts;
             config.n_txs = n_txs;
             config.hot_accounts = hot_accounts;
             config.hot_probability = hot_probability;
             config.arrival_rate = arrival_rate;
             config.seed = seed;
             config.initial_checking = initial_checking;
             config.initial_savings = initial_savings;
             if (!mix.is_none()) mix_from_object(config.mix, mix);
             return config;
           }),
           py::arg("n_accounts") = 1000, py::arg("n_txs") = 9000,
           py::arg("hot_accounts") = 10, py::arg("hot_probability") = 0.5,
           py::arg("arrival_rate") = 1000.0, py::arg("seed") = 1,
           py::arg("mix") = py::none(), py::arg("initial_checking") = 10000,
           py::arg("initial_savings") = 10000)
      .def_readwrite("n_accounts", &WorkloadConfig::n_accounts)
      .def_readwrite("n_txs", &WorkloadConfig::n_txs)
      .def_readwrite("hot_accounts", &WorkloadConfig::hot_accounts)
      .def_readwrite("hot_probability", &WorkloadConfig::hot_probability)
      .def_readwrite("arrival_rate", &WorkloadConfig::arrival_rate)
      .def_readwrite("seed", &WorkloadConfig::seed)
      .def_readwrite("initial_checking", &WorkloadConfig::initial_checking)
      .def_readwrite("initial_savings", &WorkloadConfig::initial_savings)
      .def_property(
          "mix", [](const WorkloadConfig& c) { return mix_to_list(c.mix); },
          [](WorkloadConfig& c, const py::object& v) { mix_from_object(c.mix, v); });

  py::class_<EngineConfig>(m, "EngineConfig")
      .def(py::init([](std::uint32_t workers, double scheduling_tick_s,
                       std::uint32_t rounds_per_tick, std::uint64_t block_max_txs,
                       double block_interval_s, double queue_ttl_s,
                       double lock_overhead_s, std::uint32_t max_hold_rounds,
                       double infra_failure_prob, bool admission_control,
                       std::uint64_t seed) {
             EngineConfig config;
             config.workers = workers;
             config.scheduling_tick_us = seconds_to_us(scheduling_tick_s);
             config.rounds_per_tick = rounds_per_tick;
             config.block_max_txs = block_max_txs;
             config.block_interval_us = seconds_to_us(block_interval_s);
             config.queue_ttl_us = seconds_to_us(queue_ttl_s);
             config.lock_overhead_us = seconds_to_us(lock_overhead_s);
             config.max_hold_rounds = max_hold_rounds;
             config.infra_failure_prob = infra_failure_prob;
             config.admission_control = admission_control;
             config.seed = seed;
             return config;
           }),
           py::arg("workers") = 4, py::arg("scheduling_tick_s") = 0.05,
           py::arg("rounds_per_tick") = 0, py::arg("block_max_txs") = 500,
           py::arg("block_interval_s") = 1.0, py::arg("queue_ttl_s") = 0.0,
           py::arg("lock_overhead_s") = 0.005, py::arg("max_hold_rounds") = 10,
           py::arg("infra_failure_prob") = 0.0,
           py::arg("admission_control") = true, py::arg("seed") = 1)
      .def_readwrite("workers", &EngineConfig::workers)
      .def_readwrite("rounds_per_tick", &EngineConfig::rounds_per_tick)
      .def_readwrite("block_max_txs", &EngineConfig::block_max_txs)
      .def_readwrite("max_hold_rounds", &EngineConfig::max_hold_rounds)
      .def_readwrite("infra_failure_prob", &EngineConfig::infra_failure_prob)
      .def_readwrite("admission_control", &EngineConfig::admission_control)
      .def_readwrite("seed", &EngineConfig::seed)
      .def("set_op_cost",
           [](EngineConfig& config, const std::string& op, double seconds) {
             auto kind = op_kind_from_string(op);
             if (!kind) throw py::value_error("unknown op kind '" + op + "'");
             config.cost.op_cost_us[static_cast<std::size_t>(*kind)] =
                 seconds_to_us(seconds);
           })
      .def_property(
          "queue_ttl_s",
          [](const EngineConfig& c) { return us_to_seconds(c.queue_ttl_us); },
          [](EngineConfig& c, double s) { c.queue_ttl_us = seconds_to_us(s); })
      .def_property(
          "scheduling_tick_s",
          [](const EngineConfig& c) {
            return us_to_seconds(c.scheduling_tick_us);
          },
          [](EngineConfig& c, double s) {
            c.scheduling_tick_us = seconds_to_us(s);
          });

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("scheme", &MetricsReport::scheme)
      .def_readonly("mix", &MetricsReport::mix)
      .def_readonly("workers", &MetricsReport::workers)
      .def_readonly("submitted", &MetricsReport::submitted)
      .def_readonly("succ", &MetricsReport::succ)
      .def_readonly("fail", &MetricsReport::fail)
      .def_readonly("fail_breakdown", &MetricsReport::fail_breakdown)
      .def_readonly("fake_reasons", &MetricsReport::fake_reasons)
      .def_readonly("mean_latency_s", &MetricsReport::mean_latency_s)
      .def_readonly("tps_committed", &MetricsReport::tps_committed)
      .def_readonly("success_rate", &MetricsReport::success_rate)
      .def_readonly("makespan_s", &MetricsReport::makespan_s)
      .def_readonly("stream_checksum", &MetricsReport::stream_checksum)
      .def_readonly("chain_digest", &MetricsReport::chain_digest)
      .def_readonly("blocks", &MetricsReport::blocks)
      .def("__repr__", [](const MetricsReport& r) {
        return "<MetricsReport " + r.scheme + "/" + r.mix + " succ=" +
               std::to_string(r.succ) + " fail=" + std::to_string(r.fail) + ">";
      });

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("report", &RunResult::report)
      .def_readonly("commit_order", &RunResult::commit_order)
      .def_property_readonly(
          "chain_digest",
          [](const RunResult& r) { return r.report.chain_digest; })
      .def_property_readonly(
          "blocks", [](const RunResult& r) { return r.chain.size(); })
      .def_property_readonly("final_state",
                             [](const RunResult& r) { return r.final_state; })
      .def("per_tx", &per_tx_dict)
      .def("event_log",
           [](const RunResult& r) { return export_event_log(r.events); });

  py::class_<DefenseReport>(m, "DefenseReport")
      .def_readonly("scenario", &DefenseReport::scenario)
      .def_readonly("defended", &DefenseReport::defended)
      .def_readonly("attacker_total", &DefenseReport::attacker_total)
      .def_readonly("fake_committed", &DefenseReport::fake_committed)
      .def_readonly("fake_rejected", &DefenseReport::fake_rejected)
      .def_readonly("fake_expired", &DefenseReport::fake_expired)
      .def_readonly("attacker_committed", &DefenseReport::attacker_committed)
      .def_readonly("attacker_aborted", &DefenseReport::attacker_aborted)
      .def_readonly("honest_total", &DefenseReport::honest_total)
      .def_readonly("honest_committed", &DefenseReport::honest_committed)
      .def_readonly("honest_success_rate", &DefenseReport::honest_success_rate)
      .def_readonly("honest_mean_latency_s",
                    &DefenseReport::honest_mean_latency_s)
      .def_readonly("chain_forks", &DefenseReport::chain_forks)
      .def_readonly("verdict_pass", &DefenseReport::verdict_pass)
      .def("__repr__", [](const DefenseReport& r) {
        return "<DefenseReport " + r.scenario +
               (r.defended ? " defended " : " undefended ") +
               (r.verdict_pass ? "pass" : "fail") + ">";
      });

  py::class_<AttackConfig>(m, "AttackConfig")
      .def(py::init([](const std::string& scenario, WorkloadConfig honest,
                       double intensity, std::uint64_t target_wallets,
                       std::uint64_t seed, double ddos_success_threshold) {
             AttackConfig config;
             config.scenario = parse_scenario(scenario);
             config.honest = std::move(honest);
             config.intensity = intensity;
             config.target_wallets = target_wallets;
             config.seed = seed;
             config.ddos_success_threshold = ddos_success_threshold;
             return config;
           }),
           py::arg("scenario"), py::arg("honest"), py::arg("intensity") = 10.0,
           py::arg("target_wallets") = 2, py::arg("seed") = 1,
           py::arg("ddos_success_threshold") = 0.90)
      .def_readwrite("honest", &AttackConfig::honest)
      .def_readwrite("intensity", &AttackConfig::intensity)
      .def_readwrite("target_wallets", &AttackConfig::target_wallets)
      .def_readwrite("seed", &AttackConfig::seed)
      .def_property(
          "scenario",
          [](const AttackConfig& c) { return std::string(to_string(c.scenario)); },
          [](AttackConfig& c, const std::string& s) {
            c.scenario = parse_scenario(s);
          });

  py::class_<AttackArms>(m, "AttackArms")
      .def_readonly("stream", &AttackArms::stream)
      .def_readonly("defended", &AttackArms::defended)
      .def_readonly("undefended", &AttackArms::undefended)
      .def_readonly("defended_report", &AttackArms::defended_report)
      .def_readonly("undefended_report", &AttackArms::undefended_report);

  m.def("schemes", [] {
    std::vector<std::string> names;
    for (Scheme s : all_schemes()) names.emplace_back(to_string(s));
    return names;
  });
  m.def("make_initial_state", &make_initial_state, py::arg("workload"));
  m.def("generate_workload", &generate_workload, py::arg("workload"));
  m.def("contention_index", &contention_index, py::arg("stream"));
  m.def("export_stream", &export_stream, py::arg("stream"));
  m.def("import_stream",
        [](const std::string& text) { return import_stream(text); },
        py::arg("text"));
  m.def("stream_checksum", &stream_checksum, py::arg("stream"));
  m.def(
      "run_simulation",
      [](const TxStream& stream, const std::string& scheme,
         const EngineConfig& engine, const LedgerState& initial,
         const std::string& mix_label) {
        return run_simulation(stream, parse_scheme(scheme), engine, initial,
                              mix_label);
      },
      py::arg("stream"), py::arg("scheme"), py::arg("engine"),
      py::arg("initial"), py::arg("mix_label") = "custom");
  m.def("run_attack", &run_attack, py::arg("attack"), py::arg("engine"));
  m.def("attack_initial_state", &attack_initial_state, py::arg("attack"));

  m.attr("__version__") = "0.1.0";
}
