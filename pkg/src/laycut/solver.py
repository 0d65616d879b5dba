"""Top-level solve loop: construct a lay set, then shrink it by extraction.

The improving loop walks the current lay set; for each lay it rebuilds the
demand covered by the *other* lays from scratch, and if that rebuild needs at
least two lays fewer, the walked lay is frozen into the result and the rebuild
replaces the working set. A full pass with no accepted extraction (or an
expired time budget) ends the loop; the final plan is the frozen lays plus the
working set, and always satisfies the demand exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .construction import create_lays
from .model import (
    CuttingPlan,
    Instance,
    InvalidInstanceError,
    Lay,
    make_plan,
    validate_instance,
)


@dataclass(frozen=True)
class SolveConfig:
    """Solve options: wall-clock budget in seconds (None = unlimited) and
    whether to record an improvement trace."""

    time_limit: float | None = None
    record_trace: bool = False

    def __post_init__(self) -> None:
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError(f"time_limit must be positive or None, got {self.time_limit}")


@dataclass(frozen=True)
class SolveResult:
    """A finished solve: the plan, elapsed seconds, the construction-only lay
    count, and whether the improving loop beat it. ``trace`` (when recorded)
    lists (event, lay_count, elapsed) tuples."""

    plan: CuttingPlan
    elapsed: float
    initial_k: int
    improved: bool
    trace: tuple[tuple[str, int, float], ...] | None = None


def covered_demand(lays: Sequence[Lay], inst: Instance) -> list[list[int]]:
    """SKU units produced by a lay collection: entry (i,j) = sum of counts[i]*heights[j]."""
    g, f = inst.num_figures, inst.num_fabrics
    out = [[0] * f for _ in range(g)]
    for lay in lays:
        if len(lay.counts) != g or len(lay.heights) != f:
            raise ValueError("lay dimensions do not match instance")
        for i, q in enumerate(lay.counts):
            if q:
                row = out[i]
                for j, h in enumerate(lay.heights):
                    if h:
                        row[j] += q * h
    return out


def solve(inst: Instance, cfg: SolveConfig = SolveConfig()) -> SolveResult:
    """Construct and then iteratively shrink a cutting plan for the instance.

    The budget is checked before each candidate rebuild; on expiry the current
    frozen+working lays are returned, so the plan is always exact and feasible.
    With no budget the result is deterministic.
    """
    report = validate_instance(inst)
    if not report.valid:
        raise InvalidInstanceError(report)

    start = time.perf_counter()
    deadline = None if cfg.time_limit is None else start + cfg.time_limit
    trace: list[tuple[str, int, float]] | None = [] if cfg.record_trace else None

    working = create_lays(inst.demand, inst.lengths, inst.bed_length, inst.bed_height)
    initial_k = len(working)
    if trace is not None:
        trace.append(("constructed", initial_k, time.perf_counter() - start))

    frozen: list[Lay] = []
    expired = False
    while not expired:
        accepted = False
        covered = covered_demand(working, inst)
        for lay in working:
            if deadline is not None and time.perf_counter() >= deadline:
                expired = True
                break
            rest = [row[:] for row in covered]
            for i, q in enumerate(lay.counts):
                if q:
                    row = rest[i]
                    for j, h in enumerate(lay.heights):
                        if h:
                            row[j] -= q * h
            rebuilt = create_lays(rest, inst.lengths, inst.bed_length, inst.bed_height)
            if len(rebuilt) + 1 < len(working):
                frozen.append(lay)
                working = rebuilt
                accepted = True
                if trace is not None:
                    trace.append(
                        ("extracted", len(frozen) + len(working), time.perf_counter() - start)
                    )
                break
        if not accepted:
            break

    plan = make_plan(frozen + working, inst)
    elapsed = time.perf_counter() - start
    if trace is not None:
        trace.append(("finished", plan.k, elapsed))
    return SolveResult(
        plan=plan,
        elapsed=elapsed,
        initial_k=initial_k,
        improved=plan.k < initial_k,
        trace=tuple(trace) if trace is not None else None,
    )
