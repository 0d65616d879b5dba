"""Deterministic instance generator for the standard benchmark groups.

Ten groups G1..G10 share one bed (720 x 160) and one 30-entry template length
vector (5 styles x 6 sizes, 5 fabric types); they differ only in the uniform
demand bounds. The stream is a splitmix64 PRNG with rejection sampling, pinned
so the same seed yields byte-identical instances on any platform. A full suite
draws all groups from a single stream in the listed order.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .model import Instance, save_instance

BED_LENGTH = 720
BED_HEIGHT = 160
NUM_FABRICS = 5

# 5 garment styles x 6 sizes, in style-major order.
TEMPLATE_LENGTHS: tuple[int, ...] = (
    60, 63, 66, 69, 73, 76,
    69, 72, 75, 78, 82, 86,
    80, 83, 86, 90, 94, 98,
    90, 94, 98, 102, 106, 110,
    99, 103, 107, 111, 115, 120,
)

DEFAULT_SEED = 1000000


@dataclass(frozen=True)
class GroupSpec:
    """A benchmark group: demand entries are uniform in [lb, ub] inclusive."""

    name: str
    lb: int
    ub: int

    def __post_init__(self) -> None:
        if not 0 < self.lb <= self.ub:
            raise ValueError(f"need 0 < lb <= ub, got [{self.lb}, {self.ub}]")


GROUPS: tuple[GroupSpec, ...] = (
    GroupSpec("G1", 300, 400),
    GroupSpec("G2", 300, 600),
    GroupSpec("G3", 400, 500),
    GroupSpec("G4", 300, 800),
    GroupSpec("G5", 400, 700),
    GroupSpec("G6", 500, 600),
    GroupSpec("G7", 300, 1000),
    GroupSpec("G8", 400, 900),
    GroupSpec("G9", 500, 800),
    GroupSpec("G10", 600, 700),
)

GROUPS_BY_NAME = {spec.name: spec for spec in GROUPS}

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class GeneratorState:
    """Explicit PRNG state; every draw returns the advanced state."""

    state: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "state", self.state & _MASK64)


def next_u64(st: GeneratorState) -> tuple[int, GeneratorState]:
    """One splitmix64 step: uniform 64-bit output and the advanced state."""
    s = (st.state + 0x9E3779B97F4A7C15) & _MASK64
    z = s
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31), GeneratorState(s)


def uniform_int(st: GeneratorState, lo: int, hi: int) -> tuple[int, GeneratorState]:
    """Unbiased draw in [lo, hi] via rejection; always advances at least once."""
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    span = hi - lo + 1
    # Largest multiple of span that fits in 64 bits; values at or above it
    # would bias the modulus and are redrawn.
    limit = ((1 << 64) // span) * span
    while True:
        u, st = next_u64(st)
        if u < limit:
            return lo + (u % span), st


def generate_case(
    spec: GroupSpec, st: GeneratorState, name: str | None = None
) -> tuple[Instance, GeneratorState]:
    """One instance on the standard bed; demand drawn row-major (figure-major)."""
    demand: list[tuple[int, ...]] = []
    for _ in TEMPLATE_LENGTHS:
        row = []
        for _ in range(NUM_FABRICS):
            v, st = uniform_int(st, spec.lb, spec.ub)
            row.append(v)
        demand.append(tuple(row))
    inst = Instance(
        name=name if name is not None else spec.name,
        bed_length=BED_LENGTH,
        bed_height=BED_HEIGHT,
        lengths=TEMPLATE_LENGTHS,
        demand=tuple(demand),
    )
    return inst, st


def _case_name(group: str, index: int) -> str:
    return f"{group}_case{index:02d}"


def generate_group(spec: GroupSpec, cases: int, seed: int) -> list[Instance]:
    """`cases` instances for one group from a fresh stream seeded with `seed`."""
    if cases < 1:
        raise ValueError(f"cases must be >= 1, got {cases}")
    st = GeneratorState(seed)
    out = []
    for idx in range(1, cases + 1):
        inst, st = generate_case(spec, st, name=_case_name(spec.name, idx))
        out.append(inst)
    return out


def generate_suite(
    specs: Sequence[GroupSpec], cases_per_group: int, seed: int
) -> list[tuple[GroupSpec, list[Instance]]]:
    """Instances for several groups drawn from ONE stream, groups in order.

    The first group's cases are therefore identical to generate_group's output
    for the same seed (prefix property).
    """
    if cases_per_group < 1:
        raise ValueError(f"cases_per_group must be >= 1, got {cases_per_group}")
    st = GeneratorState(seed)
    out: list[tuple[GroupSpec, list[Instance]]] = []
    for spec in specs:
        group_cases = []
        for idx in range(1, cases_per_group + 1):
            inst, st = generate_case(spec, st, name=_case_name(spec.name, idx))
            group_cases.append(inst)
        out.append((spec, group_cases))
    return out


def write_instances(
    specs: Sequence[GroupSpec], cases_per_group: int, seed: int, out_dir: str | Path
) -> list[Path]:
    """Generate a suite and write one `<group>_case<nn>.json` file per case."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = []
    for _spec, instances in generate_suite(specs, cases_per_group, seed):
        for inst in instances:
            path = out_dir / f"{inst.name}.json"
            save_instance(inst, path)
            paths.append(path)
    return paths
