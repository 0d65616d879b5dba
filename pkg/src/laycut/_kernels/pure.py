"""Pure-Python lay-search kernels; the reference the compiled backend must match.

Reachability sets are Python ints used as bitsets (bit v set <=> total length v
is attainable), so every result is exact. The compiled backend in ``_core.pyx``
implements the same algorithms over machine words and must produce bit-identical
outputs; ``tests/test_kernels.py`` enforces that.
"""

from __future__ import annotations

from typing import Iterator, Sequence

NAME = "pure"


def _clamped(count: int, length: int, cap: int) -> int:
    # No feasible solution uses more than cap // length copies of one column.
    c = cap // length
    return count if count < c else c


def _suffix_reach(cap: int, lengths: Sequence[int], counts: Sequence[int]) -> list[int]:
    """suffix[i] = bitset of total lengths attainable using columns i.. only."""
    n = len(lengths)
    full = (1 << (cap + 1)) - 1
    suffix = [0] * (n + 1)
    suffix[n] = 1
    for i in range(n - 1, -1, -1):
        m = suffix[i + 1]
        length = lengths[i]
        rem = _clamped(counts[i], length, cap)
        piece = 1
        while rem > 0:  # binary split: pieces 1,2,4,... cover every count 0..rem
            take = piece if piece < rem else rem
            m |= (m << (length * take)) & full
            rem -= take
            piece <<= 1
        suffix[i] = m
    return suffix


def _reconstruct(
    cap: int,
    lengths: Sequence[int],
    counts: Sequence[int],
    suffix: list[int],
    used: int,
) -> list[int]:
    # Scan columns in the given order, taking the largest count that keeps the
    # optimum reachable with the remaining columns. Deterministic tie-break.
    taken = [0] * len(lengths)
    rem = used
    for i, length in enumerate(lengths):
        nxt = suffix[i + 1]
        t = _clamped(counts[i], length, cap)
        if t * length > rem:
            t = rem // length
        while t > 0 and not (nxt >> (rem - t * length)) & 1:
            t -= 1
        taken[i] = t
        rem -= t * length
    return taken


def solve_knapsack(
    cap: int, lengths: Sequence[int], counts: Sequence[int]
) -> tuple[int, list[int]]:
    """Maximize used length under ``cap`` with per-column count bounds.

    Returns (used_length, taken) with taken aligned to the input order; the
    witness is the ascending-scan, greedy-largest-count one.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    suffix = _suffix_reach(cap, lengths, counts)
    used = suffix[0].bit_length() - 1
    return used, _reconstruct(cap, lengths, counts, suffix, used)


def possible_heights(
    demand: Sequence[Sequence[int]],
    lengths: Sequence[int],
    bed_length: int,
    ref_h: int,
) -> list[list[int]]:
    """Admissible layer counts per fabric type, each list strictly descending.

    For fabric j the candidates are: ref_h itself when some remaining demand
    s_ij reaches it; every ph < ref_h that divides some s_ij exactly with the
    whole quotient fitting on the bed ((s_ij/ph) * l_i <= bed_length); and 0.
    """
    g = len(lengths)
    f = len(demand[0]) if g else 0
    out: list[list[int]] = []
    for j in range(f):
        col = [demand[i][j] for i in range(g)]
        cand = []
        if any(s >= ref_h for s in col):
            cand.append(ref_h)
        for ph in range(ref_h - 1, 0, -1):
            for i in range(g):
                s = col[i]
                if s and s % ph == 0 and (s // ph) * lengths[i] <= bed_length:
                    cand.append(ph)
                    break
        cand.append(0)
        out.append(cand)
    return out


def column_capacities(
    demand: Sequence[Sequence[int]], profile: Sequence[int]
) -> list[int]:
    """Per-figure copy bounds for a layer profile: min over spread fabrics of s_ij // h_j."""
    nz = [(j, h) for j, h in enumerate(profile) if h]
    if not nz:
        raise ValueError("profile has no positive layer count")
    caps = []
    for row in demand:
        c = min(row[j] // h for j, h in nz)
        caps.append(c)
    return caps


def iter_profiles(
    cand_lists: Sequence[Sequence[int]], target: int
) -> Iterator[tuple[int, ...]]:
    """Yield every profile with h_j from cand_lists[j] summing to target exactly.

    Order: lexicographic over fabric index with candidates in list order
    (descending). Suffix-reachability pruning only skips dead branches, so the
    yielded sequence is the full enumeration.
    """
    f = len(cand_lists)
    reach = [0] * (f + 1)
    reach[f] = 1
    for j in range(f - 1, -1, -1):
        m = 0
        for h in cand_lists[j]:
            m |= reach[j + 1] << h
        reach[j] = m
    if target < 0 or not (reach[0] >> target) & 1:
        return
    profile = [0] * f

    def rec(j: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if j == f:
            yield tuple(profile)
            return
        nxt = reach[j + 1]
        for h in cand_lists[j]:
            if h > remaining:
                continue
            if not (nxt >> (remaining - h)) & 1:
                continue
            profile[j] = h
            yield from rec(j + 1, remaining - h)
        profile[j] = 0

    yield from rec(0, target)


def construct_lay(
    demand: Sequence[Sequence[int]],
    lengths: Sequence[int],
    bed_length: int,
    ref_v_num: int,
    ref_v_den: int,
    ref_h: int,
) -> tuple[tuple[int, ...], tuple[int, ...], int] | None:
    """Search for the best single lay against the remaining demand.

    Candidates are fixed once at ref_h; the working height then descends from
    ref_h. At each height every admissible profile is priced by the knapsack
    and a strictly larger volume replaces the incumbent. The search stops as
    soon as the incumbent volume reaches ref_v (given as the exact fraction
    num/den), or when height * bed_length can no longer beat it.

    Returns (heights, counts, volume) or None when no profile yields volume>0.
    """
    g = len(lengths)
    cand_lists = possible_heights(demand, lengths, bed_length, ref_h)
    f = len(cand_lists)

    best_vol = 0
    best_profile: tuple[int, ...] | None = None
    best_counts: list[int] | None = None
    height = ref_h
    hit_target = False
    while not hit_target and best_vol * ref_v_den < ref_v_num and height * bed_length > best_vol:
        for profile in iter_profiles(cand_lists, height):
            caps = [
                min(demand[i][j] // h for j, h in enumerate(profile) if h)
                for i in range(g)
            ]
            # Upper bound: even a full pattern of every allowed copy cannot
            # strictly beat the incumbent, so the knapsack result is moot.
            bound = sum(l * _clamped(c, l, bed_length) for l, c in zip(lengths, caps))
            if bound > bed_length:
                bound = bed_length
            if bound * height <= best_vol:
                continue
            suffix = _suffix_reach(bed_length, lengths, caps)
            used = suffix[0].bit_length() - 1
            vol = used * height
            if vol > best_vol:
                best_vol = vol
                best_profile = profile
                best_counts = _reconstruct(bed_length, lengths, caps, suffix, used)
                if best_vol * ref_v_den >= ref_v_num:
                    hit_target = True
                    break
            if used == bed_length:
                # Nothing at this height can be strictly better than a full bed.
                break
        height -= 1
    if best_profile is None or best_counts is None:
        return None
    return best_profile, tuple(best_counts), best_vol
