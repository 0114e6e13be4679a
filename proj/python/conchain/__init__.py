# Copyright 2026 the conchain-sim authors. Licensed under the Apache
# License, Version 2.0. See the LICENSE file at the root of this
# distribution or at http://www.apache.org/licenses/LICENSE-2.0
"""Deterministic ordering-scheme simulator with attack experiments.

The heavy lifting lives in the compiled extension; this package
re-exports its surface.
"""

from ._core import (  # noqa: F401
    AttackArms,
    AttackConfig,
    DefenseReport,
    EngineConfig,
    LedgerState,
    MetricsReport,
    RunResult,
    Transaction,
    WorkloadConfig,
    __version__,
    attack_initial_state,
    contention_index,
    export_stream,
    generate_workload,
    import_stream,
    make_initial_state,
    run_attack,
    run_simulation,
    schemes,
    stream_checksum,
)

__all__ = [
    "AttackArms",
    "AttackConfig",
    "DefenseReport",
    "EngineConfig",
    "LedgerState",
    "MetricsReport",
    "RunResult",
    "Transaction",
    "WorkloadConfig",
    "attack_initial_state",
    "contention_index",
    "export_stream",
    "generate_workload",
    "import_stream",
    "make_initial_state",
    "run_attack",
    "run_simulation",
    "schemes",
    "stream_checksum",
]
