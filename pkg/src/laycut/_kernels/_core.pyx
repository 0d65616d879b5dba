# cython: language_level=3
# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled lay-search kernels.

Same observable behavior as the pure backend (see pure.py), plus two
C-friendly accelerations that cannot change any emitted lay:

* floor quotients s_ij // h are precomputed per (fabric, candidate height);
* the profile search is branch-and-bound: a partial profile whose best
  possible pattern length, times the scan height, cannot strictly beat the
  incumbent volume is abandoned, which also subsumes the per-profile bound
  skip of the pure backend.

Reachability bitsets live in unsigned 64-bit words. Inputs are bounded to
2**31-1 per scalar so every intermediate product fits in an int64.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

ctypedef unsigned long long u64
ctypedef long long i64

NAME = "ext"

DEF LIMIT = 2147483647  # 2**31 - 1


cdef inline int _bit(u64* m, i64 v) nogil:
    return <int>((m[v >> 6] >> (v & 63)) & 1ULL)


cdef inline u64 _top_mask(i64 nbits) nogil:
    # Mask for the highest word of a bitset holding `nbits` bits.
    cdef int used = <int>(nbits & 63)
    if used == 0:
        return <u64>0xFFFFFFFFFFFFFFFFULL
    return ((<u64>1) << used) - 1


cdef void _self_shift_or(u64* m, int nwords, i64 shift, u64 top) nogil:
    # m |= m << shift, truncated to nwords words with `top` masking the last.
    cdef i64 ws = shift >> 6
    cdef int bs = <int>(shift & 63)
    cdef i64 w
    if ws >= nwords:
        return
    if bs == 0:
        for w in range(nwords - 1, ws - 1, -1):
            m[w] |= m[w - ws]
    else:
        for w in range(nwords - 1, ws, -1):
            m[w] |= (m[w - ws] << bs) | (m[w - ws - 1] >> (64 - bs))
        m[ws] |= m[0] << bs
    m[nwords - 1] &= top


cdef void _or_shift_from(u64* dst, u64* src, int nwords, i64 shift, u64 top) nogil:
    # dst |= src << shift, truncated as above. dst and src must not alias.
    cdef i64 ws = shift >> 6
    cdef int bs = <int>(shift & 63)
    cdef i64 w
    if ws >= nwords:
        return
    if bs == 0:
        for w in range(nwords - 1, ws - 1, -1):
            dst[w] |= src[w - ws]
    else:
        for w in range(nwords - 1, ws, -1):
            dst[w] |= (src[w - ws] << bs) | (src[w - ws - 1] >> (64 - bs))
        dst[ws] |= src[0] << bs
    dst[nwords - 1] &= top


cdef void _ks_suffix(i64 cap, int n, i64* lens, i64* caps, u64* table, int W,
                     u64 top) nogil:
    # table row i = bitset of pattern lengths reachable with columns i..n-1.
    cdef u64* row = table + <i64>n * W
    cdef int i
    cdef i64 l, c, rem, piece, take
    memset(row, 0, W * sizeof(u64))
    row[0] = 1ULL
    for i in range(n - 1, -1, -1):
        row = table + <i64>i * W
        memcpy(row, table + <i64>(i + 1) * W, W * sizeof(u64))
        l = lens[i]
        c = caps[i]
        if c > cap // l:
            c = cap // l
        rem = c
        piece = 1
        while rem > 0:  # binary split covers every count 0..c exactly
            take = piece if piece < rem else rem
            _self_shift_or(row, W, l * take, top)
            rem -= take
            piece <<= 1


cdef i64 _ks_best(u64* row0, int W) nogil:
    cdef int w, b
    cdef u64 v
    for w in range(W - 1, -1, -1):
        v = row0[w]
        if v:
            b = 63
            while not (v >> b) & 1ULL:
                b -= 1
            return ((<i64>w) << 6) + b
    return 0


cdef void _ks_take(i64 cap, int n, i64* lens, i64* caps, u64* table, int W,
                   i64 used, i64* taken) nogil:
    # Ascending scan, largest count that keeps the optimum reachable.
    cdef i64 rem = used
    cdef int i
    cdef i64 l, c, t
    cdef u64* nxt
    for i in range(n):
        l = lens[i]
        c = caps[i]
        if c > cap // l:
            c = cap // l
        t = rem // l
        if t > c:
            t = c
        nxt = table + <i64>(i + 1) * W
        while t > 0 and not _bit(nxt, rem - t * l):
            t -= 1
        taken[i] = t
        rem -= t * l


def solve_knapsack(cap, lengths, counts):
    """Exact bounded knapsack (value = weight): (used_length, taken)."""
    cdef i64 ccap = cap
    if ccap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    if ccap > LIMIT:
        raise ValueError("cap too large for the compiled backend; use pure")
    cdef int n = len(lengths)
    if len(counts) != n:
        raise ValueError("lengths and counts must have equal size")
    cdef int W = <int>((ccap + 64) >> 6)
    cdef u64 top = _top_mask(ccap + 1)
    cdef i64* lens = <i64*>malloc(n * sizeof(i64) if n else sizeof(i64))
    cdef i64* caps = <i64*>malloc(n * sizeof(i64) if n else sizeof(i64))
    cdef i64* taken = <i64*>malloc(n * sizeof(i64) if n else sizeof(i64))
    cdef u64* table = <u64*>malloc(<i64>(n + 1) * W * sizeof(u64))
    if not lens or not caps or not taken or not table:
        free(lens); free(caps); free(taken); free(table)
        raise MemoryError()
    cdef int i
    cdef i64 used = 0
    try:
        for i in range(n):
            lens[i] = lengths[i]
            caps[i] = counts[i]
            if lens[i] < 1 or lens[i] > LIMIT:
                raise ValueError(f"column length out of range: {lengths[i]}")
            if caps[i] < 0:
                raise ValueError(f"column capacity must be >= 0: {counts[i]}")
        with nogil:
            _ks_suffix(ccap, n, lens, caps, table, W, top)
            used = _ks_best(table, W)
            _ks_take(ccap, n, lens, caps, table, W, used, taken)
        return used, [taken[i] for i in range(n)]
    finally:
        free(lens); free(caps); free(taken); free(table)


cdef struct _Scan:
    int g
    int f
    i64 cap
    i64 target
    i64 best_vol
    i64 refv_num
    i64 refv_den
    i64* dem            # g*f remaining demand
    i64* lens           # g
    i64* cand           # f*cwidth candidate heights, descending per fabric
    int* ncand          # f
    int cwidth
    i64* quot           # (j*cwidth+idx)*g + i -> min(dem[i,j]//h, cap//l_i)
    u64* reach          # (f+1)*WH suffix profile-sum bitsets
    int WH
    u64* ks             # (g+1)*W knapsack workspace
    int W
    u64 top
    i64** cp            # per-level capacity row pointers
    i64* cpool          # (f+1)*g capacity rows
    i64* bound          # per-level sum of l_i * cp[i] (capacities pre-clamped)
    i64* profile        # f
    i64* best_profile   # f
    i64* best_counts    # g


cdef int _leaf(_Scan* s) nogil:
    # Returns 0 to continue, 1 when ref_v is reached, 2 when the height scan
    # is exhausted (a full-bed pattern cannot be strictly beaten at the same
    # height). The branch-and-bound prune guarantees a strict improvement is
    # still possible whenever this runs.
    cdef i64* caps = s.cp[s.f]
    cdef i64 used, vol
    cdef int i
    _ks_suffix(s.cap, s.g, s.lens, caps, s.ks, s.W, s.top)
    used = _ks_best(s.ks, s.W)
    vol = used * s.target
    if vol > s.best_vol:
        s.best_vol = vol
        for i in range(s.f):
            s.best_profile[i] = s.profile[i]
        _ks_take(s.cap, s.g, s.lens, caps, s.ks, s.W, used, s.best_counts)
        if s.best_vol * s.refv_den >= s.refv_num:
            return 1
    if used == s.cap:
        return 2
    return 0


cdef int _rec(_Scan* s, int j, i64 remaining) nogil:
    if j == s.f:
        return _leaf(s)
    cdef u64* nxt = s.reach + <i64>(j + 1) * s.WH
    cdef i64* base = s.cand + <i64>j * s.cwidth
    cdef i64* pc = s.cp[j]
    cdef i64* cc
    cdef i64* qrow
    cdef int idx, i, st
    cdef i64 h, nb, bnd, c, nc
    for idx in range(s.ncand[j]):
        h = base[idx]
        if h > remaining:
            continue
        if not _bit(nxt, remaining - h):
            continue
        if h == 0:
            s.cp[j + 1] = pc
            s.bound[j + 1] = s.bound[j]
        else:
            cc = s.cpool + <i64>(j + 1) * s.g
            qrow = s.quot + (<i64>j * s.cwidth + idx) * s.g
            nb = s.bound[j]
            for i in range(s.g):
                c = pc[i]
                nc = qrow[i]
                if nc < c:
                    nb -= s.lens[i] * (c - nc)
                    cc[i] = nc
                else:
                    cc[i] = c
            s.cp[j + 1] = cc
            s.bound[j + 1] = nb
        bnd = s.bound[j + 1]
        if bnd > s.cap:
            bnd = s.cap
        if bnd * s.target <= s.best_vol:
            continue  # nothing below can strictly improve the incumbent
        s.profile[j] = h
        st = _rec(s, j + 1, remaining - h)
        if st:
            return st
    return 0


def construct_lay(demand, lengths, bed_length, ref_v_num, ref_v_den, ref_h):
    """Best single lay for the remaining demand; see pure.construct_lay."""
    cdef i64 cap = bed_length
    cdef i64 num = ref_v_num
    cdef i64 den = ref_v_den
    cdef i64 rh = ref_h
    cdef int g = len(lengths)
    cdef int f = len(demand[0]) if g else 0
    if cap < 1 or rh < 1:
        raise ValueError("bed_length and ref_h must be >= 1")
    if den < 1 or num < 1:
        raise ValueError("ref_v must be a positive fraction")
    if cap > LIMIT or rh > LIMIT or num > (<i64>1 << 62) // den:
        raise ValueError("inputs too large for the compiled backend; use pure")
    if g == 0 or f == 0:
        return None

    cdef int cwidth = <int>rh + 1
    cdef int W = <int>((cap + 64) >> 6)
    cdef int WH = <int>((rh + 64) >> 6)
    cdef u64 top = _top_mask(cap + 1)
    cdef u64 htop = _top_mask(rh + 1)

    cdef _Scan s
    s.g = g; s.f = f; s.cap = cap; s.refv_num = num; s.refv_den = den
    s.cwidth = cwidth; s.W = W; s.WH = WH; s.top = top
    s.best_vol = 0

    cdef i64* dem = <i64*>malloc(<i64>g * f * sizeof(i64))
    cdef i64* lens = <i64*>malloc(g * sizeof(i64))
    cdef i64* lcap = <i64*>malloc(g * sizeof(i64))
    cdef i64* cand = <i64*>malloc(<i64>f * cwidth * sizeof(i64))
    cdef int* ncand = <int*>malloc(f * sizeof(int))
    cdef i64* quot = <i64*>malloc(<i64>f * cwidth * g * sizeof(i64))
    cdef u64* reach = <u64*>malloc(<i64>(f + 1) * WH * sizeof(u64))
    cdef u64* ks = <u64*>malloc(<i64>(g + 1) * W * sizeof(u64))
    cdef i64** cp = <i64**>malloc((f + 1) * sizeof(void*))
    cdef i64* cpool = <i64*>malloc(<i64>(f + 1) * g * sizeof(i64))
    cdef i64* bound = <i64*>malloc((f + 1) * sizeof(i64))
    cdef i64* profile = <i64*>malloc(f * sizeof(i64))
    cdef i64* best_profile = <i64*>malloc(f * sizeof(i64))
    cdef i64* best_counts = <i64*>malloc(g * sizeof(i64))
    cdef char* mark = <char*>malloc(cwidth)
    if (not dem or not lens or not lcap or not cand or not ncand or not quot
            or not reach or not ks or not cp or not cpool or not bound
            or not profile or not best_profile or not best_counts or not mark):
        free(dem); free(lens); free(lcap); free(cand); free(ncand); free(quot)
        free(reach); free(ks); free(cp); free(cpool); free(bound)
        free(profile); free(best_profile); free(best_counts); free(mark)
        raise MemoryError()

    cdef int i, j, idx, nc_j, st
    cdef i64 sval, li, d, dd, h, height, root_bound
    cdef u64* row
    try:
        for i in range(g):
            li = lengths[i]
            if li < 1 or li > LIMIT:
                raise ValueError(f"template length out of range: {lengths[i]}")
            lens[i] = li
            lcap[i] = cap // li
        for i in range(g):
            row_obj = demand[i]
            if len(row_obj) != f:
                raise ValueError("ragged demand matrix")
            for j in range(f):
                sval = row_obj[j]
                if sval < 0 or sval > LIMIT:
                    raise ValueError(f"demand entry out of range: {row_obj[j]}")
                dem[<i64>i * f + j] = sval

        # Candidate heights per fabric: ref_h when some demand reaches it,
        # every divisor ph < ref_h of a nonzero s with (s/ph)*l fitting the
        # bed, and 0. Divisors are found in pairs up to sqrt(s).
        for j in range(f):
            memset(mark, 0, cwidth)
            for i in range(g):
                sval = dem[<i64>i * f + j]
                if sval <= 0:
                    continue
                li = lens[i]
                if sval >= rh:
                    mark[rh] = 1
                d = 1
                while d * d <= sval:
                    if sval % d == 0:
                        dd = d
                        if dd < rh and (sval // dd) * li <= cap:
                            mark[dd] = 1
                        dd = sval // d
                        if dd < rh and (sval // dd) * li <= cap:
                            mark[dd] = 1
                    d += 1
            nc_j = 0
            for h in range(rh, 0, -1):
                if mark[h]:
                    cand[<i64>j * cwidth + nc_j] = h
                    nc_j += 1
            cand[<i64>j * cwidth + nc_j] = 0
            nc_j += 1
            ncand[j] = nc_j

        for j in range(f):
            for idx in range(ncand[j]):
                h = cand[<i64>j * cwidth + idx]
                if h == 0:
                    continue
                for i in range(g):
                    sval = dem[<i64>i * f + j] // h
                    if sval > lcap[i]:
                        sval = lcap[i]
                    quot[(<i64>j * cwidth + idx) * g + i] = sval

        row = reach + <i64>f * WH
        memset(row, 0, WH * sizeof(u64))
        row[0] = 1ULL
        for j in range(f - 1, -1, -1):
            row = reach + <i64>j * WH
            memset(row, 0, WH * sizeof(u64))
            for idx in range(ncand[j]):
                _or_shift_from(row, reach + <i64>(j + 1) * WH, WH,
                               cand[<i64>j * cwidth + idx], htop)

        root_bound = 0
        for i in range(g):
            cpool[i] = lcap[i]
            root_bound += lens[i] * lcap[i]
        cp[0] = cpool
        bound[0] = root_bound

        s.dem = dem; s.lens = lens; s.cand = cand; s.ncand = ncand
        s.quot = quot; s.reach = reach; s.ks = ks; s.cp = cp; s.cpool = cpool
        s.bound = bound; s.profile = profile
        s.best_profile = best_profile; s.best_counts = best_counts

        height = rh
        with nogil:
            while s.best_vol * den < num and height * cap > s.best_vol:
                if _bit(reach, height):
                    st = _rec(&s, 0, height)
                    if st == 1:
                        break
                height -= 1

        if s.best_vol == 0:
            return None
        return (
            tuple(best_profile[j] for j in range(f)),
            tuple(best_counts[i] for i in range(g)),
            s.best_vol,
        )
    finally:
        free(dem); free(lens); free(lcap); free(cand); free(ncand); free(quot)
        free(reach); free(ks); free(cp); free(cpool); free(bound)
        free(profile); free(best_profile); free(best_counts); free(mark)
