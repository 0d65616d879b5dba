"""Greedy lay construction.

One lay at a time: enumerate admissible layer-count profiles per fabric type,
price each profile with the bounded knapsack over template columns, and keep
the best lay found. The sequential constructor repeats this against the
remaining demand, steering each new lay toward the running mean volume and
height of the lays built so far, until the demand is exactly exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import _kernels
from ._kernels import pure as _pure
from .knapsack import Column
from .model import Lay


class ConstructionStallError(RuntimeError):
    """No lay with positive volume exists even at full targets; demand is stuck."""

    def __init__(self, stuck: Sequence[tuple[int, int, int]]):
        self.stuck = tuple(stuck)
        head = ", ".join(f"s[{i}][{j}]={s}" for i, j, s in self.stuck[:8])
        super().__init__(f"lay construction stalled; remaining demand: {head}")


@dataclass(frozen=True)
class HeightCandidates:
    """Admissible layer counts per fabric type, each tuple strictly descending."""

    per_fabric: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ConstructionTargets:
    """Adaptive search targets: stop at ref_v lay volume, start at ref_h layers."""

    ref_v: Fraction
    ref_h: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "ref_v", Fraction(self.ref_v))
        if self.ref_v <= 0:
            raise ValueError(f"ref_v must be positive, got {self.ref_v}")
        if self.ref_h < 1:
            raise ValueError(f"ref_h must be >= 1, got {self.ref_h}")


def create_possible_heights(
    demand: Sequence[Sequence[int]],
    lengths: Sequence[int],
    bed_length: int,
    ref_h: int,
) -> HeightCandidates:
    """Candidate layer counts per fabric for the remaining demand.

    ref_h joins fabric j's set when some s_ij >= ref_h; each smaller ph joins
    when it divides some nonzero s_ij exactly and the full quotient fits the
    bed; 0 is always a member.
    """
    if ref_h < 1:
        raise ValueError(f"ref_h must be >= 1, got {ref_h}")
    lists = _pure.possible_heights(demand, lengths, bed_length, ref_h)
    return HeightCandidates(per_fabric=tuple(tuple(c) for c in lists))


def create_columns(
    demand: Sequence[Sequence[int]],
    lengths: Sequence[int],
    profile: Sequence[int],
) -> list[Column]:
    """One knapsack column per figure for a fixed layer profile.

    Capacity is the tightest floor quotient over the spread fabrics, so no
    choice of copies can overproduce any SKU.
    """
    caps = _pure.column_capacities(demand, profile)
    return [
        Column(length=lengths[i], capacity=caps[i], figure_index=i)
        for i in range(len(lengths))
    ]


def enumerate_height_profiles(
    cands: HeightCandidates, target_h: int
) -> Iterator[tuple[int, ...]]:
    """All profiles with entries from the candidate sets summing to target_h.

    Deterministic order: lexicographic over fabric index, candidate values
    descending. May yield nothing.
    """
    if target_h < 1:
        raise ValueError(f"target_h must be >= 1, got {target_h}")
    return _pure.iter_profiles(cands.per_fabric, target_h)


def create_lay(
    demand: Sequence[Sequence[int]],
    lengths: Sequence[int],
    targets: ConstructionTargets,
    bed_length: int,
) -> Lay | None:
    """Best single lay for the remaining demand, or None if none has volume > 0.

    Candidates are computed once at targets.ref_h; the working height then
    descends. The search returns as soon as a lay's volume reaches
    targets.ref_v, or when no lower height could beat the incumbent.
    """
    if not any(s for row in demand for s in row):
        raise ValueError("remaining demand is all zero; nothing to construct")
    res = _kernels.active.construct_lay(
        [list(row) for row in demand],
        list(lengths),
        bed_length,
        targets.ref_v.numerator,
        targets.ref_v.denominator,
        targets.ref_h,
    )
    if res is None:
        return None
    heights, counts, _vol = res
    return Lay(heights=tuple(heights), counts=tuple(counts))


def create_lays(
    demand: Sequence[Sequence[int]],
    lengths: Sequence[int],
    bed_length: int,
    bed_height: int,
) -> list[Lay]:
    """Construct lays until the demand is exactly exhausted.

    Targets start at the full bed (ref_v = bed_length * bed_height,
    ref_h = bed_height) and after every lay are reset to the mean volume and
    the half-up-rounded mean height of all lays so far (clamped to
    [1, bed_height]). Raises ConstructionStallError if no positive-volume lay
    exists even after one retry at full targets.
    """
    g = len(lengths)
    f = len(demand[0]) if g else 0
    remaining = [list(row) for row in demand]
    lengths = list(lengths)
    full_v = bed_length * bed_height

    lays: list[Lay] = []
    total_vol = 0
    total_height = 0
    ref_v_num, ref_v_den = full_v, 1
    ref_h = bed_height
    construct = _kernels.active.construct_lay
    while any(s for row in remaining for s in row):
        res = construct(remaining, lengths, bed_length, ref_v_num, ref_v_den, ref_h)
        if res is None and (ref_v_num != full_v or ref_v_den != 1 or ref_h != bed_height):
            res = construct(remaining, lengths, bed_length, full_v, 1, bed_height)
        if res is None:
            stuck = [
                (i, j, remaining[i][j])
                for i in range(g)
                for j in range(f)
                if remaining[i][j]
            ]
            raise ConstructionStallError(stuck)
        heights, counts, vol = res
        for i in range(g):
            q = counts[i]
            if q:
                row = remaining[i]
                for j in range(f):
                    h = heights[j]
                    if h:
                        row[j] -= q * h
                        if row[j] < 0:
                            raise RuntimeError(
                                f"internal error: overproduction at SKU ({i},{j})"
                            )
        lays.append(Lay(heights=tuple(heights), counts=tuple(counts)))
        total_vol += vol
        total_height += sum(heights)
        k = len(lays)
        ref_v_num, ref_v_den = total_vol, k
        ref_h = (2 * total_height + k) // (2 * k)  # mean, rounded half up
        if ref_h < 1:
            ref_h = 1
        elif ref_h > bed_height:
            ref_h = bed_height
    return lays
