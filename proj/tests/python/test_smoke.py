# Copyright 2026 the conchain-sim authors. Licensed under the Apache
# License, Version 2.0. See the LICENSE file at the root of this
# distribution or at http://www.apache.org/licenses/LICENSE-2.0
"""Smoke tests for the Python bindings."""

import conchain
import pytest


def small_workload(seed=7, n_txs=600):
    return conchain.WorkloadConfig(
        n_accounts=120,
        n_txs=n_txs,
        hot_accounts=4,
        hot_probability=0.5,
        seed=seed,
        mix="RW",
    )


def test_workload_is_deterministic():
    wl = small_workload()
    a = conchain.generate_workload(wl)
    b = conchain.generate_workload(wl)
    assert conchain.stream_checksum(a) == conchain.stream_checksum(b)
    assert [t.id for t in a[:5]] == [0, 1, 2, 3, 4]

    wl.seed = 8
    c = conchain.generate_workload(wl)
    assert conchain.stream_checksum(a) != conchain.stream_checksum(c)


def test_stream_round_trip_and_contention():
    wl = small_workload()
    stream = conchain.generate_workload(wl)
    back = conchain.import_stream(conchain.export_stream(stream))
    assert conchain.stream_checksum(back) == conchain.stream_checksum(stream)

    deposits = conchain.import_stream(
        "0,1,deposit_checking,a1,5\n1,2,deposit_checking,a1,5\n"
    )
    assert conchain.contention_index(deposits) == 1.0


def test_dependency_scheduler_beats_fifo():
    wl = small_workload()
    stream = conchain.generate_workload(wl)
    initial = conchain.make_initial_state(wl)
    engine = conchain.EngineConfig(workers=4, seed=7)

    fifo = conchain.run_simulation(stream, "fifo", engine, initial, "RW")
    cc = conchain.run_simulation(stream, "conchain", engine, initial, "RW")

    assert fifo.report.stream_checksum == cc.report.stream_checksum
    assert cc.report.success_rate > fifo.report.success_rate
    assert "aborted_conflict" not in cc.report.fail_breakdown
    assert fifo.report.fail_breakdown.get("aborted_conflict", 0) > 0

    per_tx = cc.per_tx()
    assert len(per_tx) == wl.n_txs
    committed = sum(1 for status, _ in per_tx.values() if status == "committed")
    assert committed == cc.report.succ


def test_unknown_scheme_raises():
    wl = small_workload(n_txs=10)
    stream = conchain.generate_workload(wl)
    initial = conchain.make_initial_state(wl)
    with pytest.raises(ValueError):
        conchain.run_simulation(stream, "warp", conchain.EngineConfig(), initial)


def test_ddos_defense_verdict():
    attack = conchain.AttackConfig(
        scenario="ddos",
        honest=small_workload(seed=3, n_txs=500),
        intensity=5.0,
        target_wallets=2,
        seed=3,
    )
    arms = conchain.run_attack(attack, conchain.EngineConfig(seed=3))
    assert arms.defended_report.verdict_pass
    assert arms.defended_report.fake_committed == 0
    assert (
        arms.defended_report.honest_success_rate
        >= arms.undefended_report.honest_success_rate
    )
    total = arms.defended_report.attacker_total
    assert total == (
        arms.defended_report.attacker_committed
        + arms.defended_report.fake_rejected
        + arms.defended_report.fake_expired
        + arms.defended_report.attacker_aborted
    )


def test_event_log_and_chain():
    wl = small_workload(n_txs=50)
    stream = conchain.generate_workload(wl)
    initial = conchain.make_initial_state(wl)
    run = conchain.run_simulation(stream, "conchain", conchain.EngineConfig(), initial)
    log = run.event_log()
    assert "dispatch" in log and "complete" in log
    assert run.blocks >= 2  # genesis plus at least one cut block
    assert run.chain_digest != 0
    assert run.final_state.total_supply() >= 0
