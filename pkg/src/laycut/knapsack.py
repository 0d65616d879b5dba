"""Bounded knapsack over template columns: maximize used pattern length.

Value equals weight here — the objective is simply how much of the bed length
the chosen columns cover — so the solve is an exact reachability maximization
with a pinned deterministic witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _kernels


@dataclass(frozen=True)
class Column:
    """A (length, capacity) item offered to the knapsack for one figure."""

    length: int
    capacity: int
    figure_index: int = 0

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"column length must be >= 1, got {self.length}")
        if self.capacity < 0:
            raise ValueError(f"column capacity must be >= 0, got {self.capacity}")


@dataclass(frozen=True)
class KnapsackSolution:
    """Chosen copy counts per column (input order) and the length they cover."""

    taken: tuple[int, ...]
    used_length: int


def solve_bounded_knapsack(cap: int, columns: Sequence[Column]) -> KnapsackSolution:
    """Maximize total used length subject to the cap and per-column capacities.

    Deterministic: among optimal solutions the witness is reconstructed by
    scanning columns in ascending figure_index (stable on ties) and assigning
    each the largest count that keeps the optimum reachable.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if not columns:
        return KnapsackSolution(taken=(), used_length=0)
    order = sorted(range(len(columns)), key=lambda i: columns[i].figure_index)
    used, taken_ordered = _kernels.active.solve_knapsack(
        cap,
        [columns[i].length for i in order],
        [columns[i].capacity for i in order],
    )
    taken = [0] * len(columns)
    for pos, i in enumerate(order):
        taken[i] = taken_ordered[pos]
    return KnapsackSolution(taken=tuple(taken), used_length=used)
