"""Domain model for lay planning: instances, lays, plans, and their validation.

An *instance* is a production order: a demand matrix of SKUs (garment figure x
fabric type), the fabric length each figure's template consumes, and the
cutting-bed limits. A *lay* is one spread-and-cut: a layer count per fabric
type plus a copy count per figure, producing ``counts[i] * heights[j]`` units
of SKU ``(i, j)``. A *cutting plan* is an ordered list of lays claimed to meet
the demand exactly.

All values are exact integers so validation is bit-exact; length units are
abstract. Every type is immutable after construction and every operation is a
pure function, so everything here is safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


class InvalidInstanceError(ValueError):
    """Raised when an operation requires a valid instance but got none."""

    def __init__(self, report: ValidationReport):
        self.report = report
        detail = "; ".join(str(v) for v in report.violations[:5])
        super().__init__(f"invalid instance: {detail}")


@dataclass(frozen=True)
class Instance:
    """A production order together with the cutting-bed limits.

    Attributes:
        name: identifier used in plan files and reports.
        bed_length: maximum total template length of one lay (l_ub).
        bed_height: maximum total layer count of one lay (h_ub).
        lengths: fabric length consumed by each garment figure's template.
        demand: demand[i][j] = required units of figure i in fabric j.

    Construction only normalizes the containers; use :func:`validate_instance`
    to check shapes, signs, and length feasibility.
    """

    name: str
    bed_length: int
    bed_height: int
    lengths: tuple[int, ...]
    demand: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "lengths", tuple(self.lengths))
        object.__setattr__(self, "demand", tuple(tuple(row) for row in self.demand))

    @property
    def num_figures(self) -> int:
        return len(self.lengths)

    @property
    def num_fabrics(self) -> int:
        return len(self.demand[0]) if self.demand else 0

    @property
    def bed_volume(self) -> int:
        """Capacity of one lay: bed_length * bed_height."""
        return self.bed_length * self.bed_height


@dataclass(frozen=True)
class Lay:
    """One spread-and-cut: per-fabric layer counts and per-figure copy counts.

    SKU (i, j) output of this lay is ``counts[i] * heights[j]``.
    """

    heights: tuple[int, ...]
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "heights", tuple(self.heights))
        object.__setattr__(self, "counts", tuple(self.counts))

    @property
    def total_height(self) -> int:
        return sum(self.heights)


@dataclass(frozen=True)
class CuttingPlan:
    """An ordered collection of lays claimed to satisfy an instance exactly.

    ``k`` is the lay count (the minimization objective) and ``mean_ur`` the
    unweighted mean utilization rate over lays (0.0 for an empty plan).
    """

    instance: str
    lays: tuple[Lay, ...]
    k: int
    mean_ur: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lays", tuple(self.lays))


@dataclass(frozen=True)
class Violation:
    """One validation failure: what kind, where, and observed vs. required."""

    kind: str  # exactness | length | height | shape
    where: tuple[int, ...]
    observed: object
    required: object

    def __str__(self) -> str:
        loc = ",".join(str(x) for x in self.where) if self.where else "-"
        return f"{self.kind}@({loc}): observed {self.observed}, required {self.required}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation pass; valid iff no violations were collected."""

    valid: bool
    violations: tuple[Violation, ...] = field(default=())

    @classmethod
    def from_violations(cls, violations: Iterable[Violation]) -> ValidationReport:
        vs = tuple(violations)
        return cls(valid=not vs, violations=vs)


def validate_instance(inst: Instance) -> ValidationReport:
    """Check an instance's shape, signs, and per-figure length feasibility.

    A figure whose template is longer than the bed is only a violation if some
    demand row entry actually asks for it.
    """
    out: list[Violation] = []
    g = len(inst.lengths)
    if g < 1:
        out.append(Violation("shape", (), 0, ">=1 garment figure"))
    if not isinstance(inst.bed_length, int) or inst.bed_length < 1:
        out.append(Violation("shape", (), inst.bed_length, "bed_length >= 1"))
    if not isinstance(inst.bed_height, int) or inst.bed_height < 1:
        out.append(Violation("shape", (), inst.bed_height, "bed_height >= 1"))
    if len(inst.demand) != g:
        out.append(Violation("shape", (), len(inst.demand), f"{g} demand rows"))
        return ValidationReport.from_violations(out)
    f = len(inst.demand[0]) if inst.demand else 0
    if g >= 1 and f < 1:
        out.append(Violation("shape", (0,), 0, ">=1 fabric type"))
    for i, row in enumerate(inst.demand):
        if len(row) != f:
            out.append(Violation("shape", (i,), len(row), f"{f} columns"))
            continue
        for j, s in enumerate(row):
            if not isinstance(s, int) or s < 0:
                out.append(Violation("shape", (i, j), s, "integer >= 0"))
    for i, length in enumerate(inst.lengths):
        if not isinstance(length, int) or length < 1:
            out.append(Violation("shape", (i,), length, "length >= 1"))
    if not out:
        for i, row in enumerate(inst.demand):
            if any(s > 0 for s in row) and inst.lengths[i] > inst.bed_length:
                out.append(Violation("length", (i,), inst.lengths[i], inst.bed_length))
    return ValidationReport.from_violations(out)


def _check_lay_dims(lay: Lay, inst: Instance) -> None:
    if len(lay.counts) != inst.num_figures or len(lay.heights) != inst.num_fabrics:
        raise ValueError(
            f"lay dimensions ({len(lay.heights)} fabrics, {len(lay.counts)} figures) "
            f"do not match instance ({inst.num_fabrics}, {inst.num_figures})"
        )


def lay_volume(lay: Lay, inst: Instance) -> int:
    """Volume of one lay: (total template length) * (total layer count)."""
    _check_lay_dims(lay, inst)
    pattern = sum(l * q for l, q in zip(inst.lengths, lay.counts))
    return pattern * sum(lay.heights)


def utilization_rate(lay: Lay, inst: Instance) -> float:
    """Lay volume as a fraction of the bed capacity, in [0, 1]."""
    return lay_volume(lay, inst) / inst.bed_volume


def validate_plan(plan: CuttingPlan, inst: Instance) -> ValidationReport:
    """Check a plan against an instance: exactness plus per-lay bed limits.

    Violations:
        shape     — lay dimension mismatch, negative entries, all-zero heights
                    or counts, or a stored lay count k that is not len(lays).
        length    — a lay's total template length exceeds bed_length.
        height    — a lay's total layer count exceeds bed_height.
        exactness — produced units of some SKU differ from its demand.
    """
    out: list[Violation] = []
    g, f = inst.num_figures, inst.num_fabrics
    if plan.k != len(plan.lays):
        out.append(Violation("shape", (), plan.k, f"k == len(lays) == {len(plan.lays)}"))
    produced = [[0] * f for _ in range(g)]
    for k, lay in enumerate(plan.lays):
        if len(lay.counts) != g or len(lay.heights) != f:
            out.append(
                Violation("shape", (k,), (len(lay.heights), len(lay.counts)), (f, g))
            )
            continue
        if any(not isinstance(q, int) or q < 0 for q in lay.counts) or any(
            not isinstance(h, int) or h < 0 for h in lay.heights
        ):
            out.append(Violation("shape", (k,), "negative or non-integer entry", ">= 0"))
            continue
        if not any(lay.heights) or not any(lay.counts):
            out.append(Violation("shape", (k,), "empty lay", "some height and count > 0"))
        pattern = sum(l * q for l, q in zip(inst.lengths, lay.counts))
        if pattern > inst.bed_length:
            out.append(Violation("length", (k,), pattern, inst.bed_length))
        total_h = sum(lay.heights)
        if total_h > inst.bed_height:
            out.append(Violation("height", (k,), total_h, inst.bed_height))
        for i, q in enumerate(lay.counts):
            if q:
                for j, h in enumerate(lay.heights):
                    if h:
                        produced[i][j] += q * h
    for i in range(g):
        for j in range(f):
            if produced[i][j] != inst.demand[i][j]:
                out.append(Violation("exactness", (i, j), produced[i][j], inst.demand[i][j]))
    return ValidationReport.from_violations(out)


def volume_lower_bound(inst: Instance) -> int:
    """Fewest lays any exact plan can have, by volume: ceil(demand volume / bed volume)."""
    total = sum(
        l * s for l, row in zip(inst.lengths, inst.demand) for s in row
    )
    return -(-total // inst.bed_volume)


def make_plan(lays: Sequence[Lay], inst: Instance) -> CuttingPlan:
    """Assemble a CuttingPlan from lays, computing k and the mean utilization."""
    lays = tuple(lays)
    if lays:
        mean_ur = sum(utilization_rate(lay, inst) for lay in lays) / len(lays)
    else:
        mean_ur = 0.0
    return CuttingPlan(instance=inst.name, lays=lays, k=len(lays), mean_ur=mean_ur)


# ---------------------------------------------------------------------------
# File formats (JSON, UTF-8). Field names are part of the contract.
# ---------------------------------------------------------------------------


class FileFormatError(ValueError):
    """Raised when an instance or plan file is structurally unreadable."""


def instance_to_dict(inst: Instance) -> dict:
    return {
        "name": inst.name,
        "l_ub": inst.bed_length,
        "h_ub": inst.bed_height,
        "lengths": list(inst.lengths),
        "demand": [list(row) for row in inst.demand],
    }


def instance_from_dict(data: dict) -> Instance:
    try:
        return Instance(
            name=data["name"],
            bed_length=data["l_ub"],
            bed_height=data["h_ub"],
            lengths=tuple(data["lengths"]),
            demand=tuple(tuple(row) for row in data["demand"]),
        )
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"malformed instance object: {exc}") from exc


def plan_to_dict(plan: CuttingPlan) -> dict:
    return {
        "instance": plan.instance,
        "lays": [
            {"heights": list(lay.heights), "counts": list(lay.counts)}
            for lay in plan.lays
        ],
        "k": plan.k,
        "mean_ur": plan.mean_ur,
    }


def plan_from_dict(data: dict) -> CuttingPlan:
    try:
        lays = tuple(
            Lay(heights=tuple(e["heights"]), counts=tuple(e["counts"]))
            for e in data["lays"]
        )
        return CuttingPlan(
            instance=data["instance"], lays=lays, k=data["k"], mean_ur=data["mean_ur"]
        )
    except (KeyError, TypeError) as exc:
        raise FileFormatError(f"malformed plan object: {exc}") from exc


def load_instance(path: str | Path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: not valid JSON: {exc}") from exc
    return instance_from_dict(data)


def save_instance(inst: Instance, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(instance_to_dict(inst), indent=1) + "\n", encoding="utf-8"
    )


def load_plan(path: str | Path) -> CuttingPlan:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FileFormatError(f"{path}: not valid JSON: {exc}") from exc
    return plan_from_dict(data)


def save_plan(plan: CuttingPlan, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(plan_to_dict(plan), indent=1) + "\n", encoding="utf-8"
    )
