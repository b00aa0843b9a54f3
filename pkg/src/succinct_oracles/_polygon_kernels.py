"""Numba kernels of the unified polygon oracle.

Argument bundles:
  F   = (words, sb_ranks)                    first-occurrence bits
  Sp  = (words2d, ranks2d, zeros, levels)    non-first labels minus one
  A   = (words, sb_ranks)                    arc flag of the side starting here
  R   = (RangeArgIndex.kernel,) * 5 for N, Na, Pa, Nc, Pc
All positions and labels are 1-based; infinity is N + 1.
"""

import numpy as np
from numba import njit

from .primitives import _kernels as K
from .primitives._kernels import leaf

V_N, V_NA, V_PA, V_NC, V_PC = 0, 1, 2, 3, 4
ARC, CHORD = 1, 0


@leaf
def s_access(F, Sp, i):
    fw, fr = F
    if K.bv_access(fw, i - 1):
        return K.bv_rank1(fw, fr, i)
    r0 = i - K.bv_rank1(fw, fr, i)
    sw, sr, sz, sl = Sp
    return K.wm_access(sw, sr, sz, sl, r0 - 1) + 1


@leaf
def s_rank(F, Sp, a, i):
    fw, fr = F
    r1 = K.bv_rank1(fw, fr, i)
    sw, sr, sz, sl = Sp
    r = K.wm_rank(sw, sr, sz, sl, a - 1, i - r1)
    if r1 >= a:
        r += 1
    return r


@leaf
def s_select(F, Sp, a, j):
    fw, fr = F
    if j == 1:
        return K.bv_select1(fw, fr, a)
    sw, sr, sz, sl = Sp
    return K.bv_select0(fw, fr, K.wm_select(sw, sr, sz, sl, a - 1, j - 1))


@leaf
def corner_count(F, Sp, N, n, u):
    sw, sr, sz, sl = Sp
    return K.wm_rank(sw, sr, sz, sl, u - 1, N - n) + 1


@njit(cache=True)
def corners(F, Sp, N, n, u):
    """Positions of all corners of u, ascending (one wavelet descent)."""
    fw, fr = F
    sw, sr, sz, sl = Sp
    s, e = K.wm_block(sw, sr, sz, sl, u - 1, N - n)
    out = np.empty(e - s + 1, dtype=np.int64)
    out[0] = K.bv_select1(fw, fr, u)
    for j in range(s, e):
        out[j - s + 1] = K.bv_select0(fw, fr, K._wm_lift(sw, sr, sz, sl, u - 1, j) + 1)
    return out


@leaf
def locate(F, Sp, N, n, i):
    """(u, r, d, p, s, e) for position i: owner, occurrence number, corner
    count, and the bottom-level wavelet index of this occurrence inside
    u's block [s, e) (p = s - 1 for a first occurrence)."""
    fw, fr = F
    sw, sr, sz, sl = Sp
    r1 = K.bv_rank1(fw, fr, i)
    if K.bv_access(fw, i - 1):
        s, e = K.wm_block(sw, sr, sz, sl, r1 - 1, N - n)
        return r1, 1, e - s + 1, s - 1, s, e
    c, p, s, e = K.wm_access_block(sw, sr, sz, sl, i - r1 - 1, N - n)
    return c + 1, p - s + 2, e - s + 1, p, s, e


@leaf
def _corner_at(F, Sp, u, q, s):
    # position of the corner whose bottom-level index is q (s - 1: first)
    fw, fr = F
    if q < s:
        return K.bv_select1(fw, fr, u)
    sw, sr, sz, sl = Sp
    return K.bv_select0(fw, fr, K._wm_lift(sw, sr, sz, sl, u - 1, q) + 1)


@leaf
def _virt_from(F, Sp, A, N, forced, which, i, u, r, d, p, s, e):
    aw, ar = A
    inf = N + 1
    if which == V_N or which == V_NA or which == V_NC:
        starts_arc = K.bv_access(aw, i - 1) == 1
        if which == V_NA and not starts_arc:
            return 0
        if which == V_NC and (forced or starts_arc):
            return 0
        if r < d:
            return _corner_at(F, Sp, u, p + 1, s)
        return 0 if which == V_NC else inf
    if which == V_PC and forced:
        return inf
    prev = _corner_at(F, Sp, u, p - 1 if r > 1 else e - 1, s)
    ends_arc = K.bv_access(aw, prev - 1) == 1
    if which == V_PA:
        if not ends_arc:
            return inf
        return prev if r > 1 else 0
    if not ends_arc and r > 1:
        return prev
    return inf


@leaf
def virt(F, Sp, A, n, N, forced, which, i):
    u, r, d, p, s, e = locate(F, Sp, N, n, i)
    return _virt_from(F, Sp, A, N, forced, which, i, u, r, d, p, s, e)


@leaf
def _count_upto(Sp, c, x, s):
    # occurrences of symbol c among the first x entries of Sp, given the
    # bottom-level start s of c's block
    sw, sr, sz, sl = Sp
    for lv in range(sl):
        b = (c >> (sl - 1 - lv)) & 1
        r1 = K._rank2(sw, sr, lv, x)
        x = sz[lv] + r1 if b else x - r1
    return x - s


@leaf
def passes(F, Sp, A, n, N, forced, which, i, thr, is_max):
    """(virt[which][i] > thr if is_max else virt[which][i] < thr, owner).

    For the forward arrays the comparison is settled by a rank instead of
    locating the next corner: that corner lies beyond thr exactly when u
    has no corner in (i, thr].
    """
    u, r, d, p, s, e = locate(F, Sp, N, n, i)
    if not is_max:
        val = _virt_from(F, Sp, A, N, forced, which, i, u, r, d, p, s, e)
        return val < thr, u
    aw, ar = A
    starts_arc = K.bv_access(aw, i - 1) == 1
    if which == V_NA and not starts_arc:
        return False, u
    if which == V_NC and (forced or starts_arc or r == d):
        return False, u
    if r == d:
        return N + 1 > thr, u
    if thr < i:
        return True, u
    if thr >= N:
        return False, u
    fw, fr = F
    # corners of u in S[1..thr] = first one + those among Sp[1..thr - rank1]
    upto = _count_upto(Sp, u - 1, thr - K.bv_rank1(fw, fr, thr), s) + 1
    return upto == r, u


@njit(cache=True)
def virt_all(F, Sp, A, n, N, forced):
    """Materialize N, Na, Pa, Nc, Pc (row per array) for index building."""
    out = np.empty((5, N), dtype=np.int64)
    for i in range(1, N + 1):
        u, r, d, p, s, e = locate(F, Sp, N, n, i)
        for which in range(5):
            out[which, i - 1] = _virt_from(F, Sp, A, N, forced, which, i, u, r, d, p, s, e)
    return out


@leaf
def _merge_meets(aw, pu, pv):
    """Cyclic merge of two ascending corner lists.

    With four or more label changes around the circle some side of one
    polygon has corners of the other both inside and outside its span, so a
    crossing chord or an arc holding a corner must exist.  With exactly two
    changes the polygons meet only if the side of either one that spans the
    other's whole block is an arc.
    """
    du = pu.shape[0]
    dv = pv.shape[0]
    m = du + dv
    first = 0 if pu[0] < pv[0] else 1
    prev_lab = -1
    prev_pos = 0
    changes = 0
    arc_at_change = False
    i = 0
    j = 0
    for _ in range(m):
        if j >= dv or (i < du and pu[i] < pv[j]):
            lab = 0
            pos = pu[i]
            i += 1
        else:
            lab = 1
            pos = pv[j]
            j += 1
        if prev_lab >= 0 and lab != prev_lab:
            changes += 1
            if K.bv_access(aw, prev_pos - 1):
                arc_at_change = True
        prev_lab = lab
        prev_pos = pos
    if prev_lab != first:
        changes += 1
        if K.bv_access(aw, prev_pos - 1):
            arc_at_change = True
    return changes >= 4 or arc_at_change


@njit(cache=True)
def adjacent(F, Sp, A, n, N, u, v):
    if u == v:
        return False
    aw, ar = A
    return _merge_meets(aw, corners(F, Sp, N, n, u), corners(F, Sp, N, n, v))


@leaf
def _inside(x, s, t):
    if s < t:
        return s < x < t
    return x > s or x < t


@leaf
def side_hits(ek, es, et, fk, fs, ft):
    if ek == CHORD and fk == CHORD:
        if es == fs or es == ft or et == fs or et == ft:
            return False
        return _inside(fs, es, et) != _inside(ft, es, et)
    if ek == ARC and fk == CHORD:
        return _inside(fs, es, et) or _inside(ft, es, et)
    if ek == CHORD and fk == ARC:
        return _inside(es, fs, ft) or _inside(et, fs, ft)
    return (
        _inside(fs, es, et) or _inside(ft, es, et) or _inside(es, fs, ft)
        or _inside(et, fs, ft) or (es == fs and et == ft)
    )


@njit(cache=True)
def _grow(arr):
    out = np.empty(arr.shape[0] * 2, dtype=arr.dtype)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def _mark(v, u, D, out, cnt, collect):
    if v == u:
        return out, cnt
    if collect:
        if D[v] == 0:
            D[v] = 1
            if cnt == out.shape[0]:
                out = _grow(out)
            out[cnt] = v
            cnt += 1
    else:
        D[v] = 0
    return out, cnt


@njit(cache=True)
def _emit(F, Sp, m, u, D, out, cnt, collect):
    return _mark(s_access(F, Sp, m), u, D, out, cnt, collect)


@njit(cache=True)
def _enum(F, Sp, A, n, N, forced, R, which, lo, hi, thr, is_max, u, D, out, cnt, collect):
    """Every m in [lo, hi] with virt[m] > thr (max) or < thr (min), by
    recursive range-extremum splitting; stops a branch at the first miss."""
    if lo > hi:
        return out, cnt
    w, rk, wm, mn, sp = R
    st = np.empty(64, dtype=np.int64)
    st[0] = lo
    st[1] = hi
    top = 2
    while top > 0:
        b = st[top - 1]
        a = st[top - 2]
        top -= 2
        if a > b:
            continue
        m = K.rmq_query(w, rk, wm, mn, sp, a, b)
        ok, v = passes(F, Sp, A, n, N, forced, which, m, thr, is_max)
        if ok:
            out, cnt = _mark(v, u, D, out, cnt, collect)
            if top + 4 > st.shape[0]:
                st = _grow(st)
            st[top] = a
            st[top + 1] = m - 1
            st[top + 2] = m + 1
            st[top + 3] = b
            top += 4
    return out, cnt


@njit(cache=True)
def _wrap_candidates(F, Sp, A, n, N, forced, RN, lo, hi, is_chord, u, D, out, cnt, collect):
    """Owners of last and first occurrences strictly inside (lo, hi) whose
    wrap side meets the side of u spanning (lo, hi).

    Any corner inside an arc side meets it.  For a chord side, a wrap side
    running from a last occurrence inside back to its first corner meets
    it iff that first corner lies before lo; one running to a first
    occurrence inside meets it iff the owner has a corner beyond hi.  The
    tests are exact for wrap chords; wrap arcs that pass them do meet the
    side (and are reported by the arc cases anyway).
    """
    a = max(lo + 1, 1)
    b = min(hi - 1, N)
    if a > b:
        return out, cnt
    fw, fr = F
    sw, sr, sz, sl = Sp
    w, rk, wm, mn, sp = RN
    st = np.empty(64, dtype=np.int64)
    st[0] = a
    st[1] = b
    top = 2
    while top > 0:
        y = st[top - 1]
        x = st[top - 2]
        top -= 2
        if x > y:
            continue
        m = K.rmq_query(w, rk, wm, mn, sp, x, y)
        last, v = passes(F, Sp, A, n, N, forced, V_N, m, N, True)
        if not last:
            continue
        if not is_chord or K.bv_select1(fw, fr, v) < lo:
            out, cnt = _mark(v, u, D, out, cnt, collect)
        if top + 4 > st.shape[0]:
            st = _grow(st)
        st[top] = x
        st[top + 1] = m - 1
        st[top + 2] = m + 1
        st[top + 3] = y
        top += 4
    total = K.bv_rank1(fw, fr, N)
    v = K.bv_rank1(fw, fr, a - 1) + 1
    while v <= total:
        p = K.bv_select1(fw, fr, v)
        if p > b:
            break
        if not is_chord:
            out, cnt = _mark(v, u, D, out, cnt, collect)
        else:
            s, e = K.wm_block(sw, sr, sz, sl, v - 1, N - n)
            upto = _count_upto(Sp, v - 1, hi - K.bv_rank1(fw, fr, hi), s) + 1
            if upto < e - s + 1:
                out, cnt = _mark(v, u, D, out, cnt, collect)
        v += 1
    return out, cnt


@njit(cache=True)
def _neighborhood_pass(F, Sp, A, n, N, forced, R, u, D, out, collect, wrap_scan):
    aw, ar = A
    RN, RNa, RPa, RNc, RPc = R
    pos = corners(F, Sp, N, n, u)
    d = pos.shape[0]
    cnt = 0
    for i in range(d):
        p = pos[i]
        q = pos[(i + 1) % d]
        kind = K.bv_access(aw, p - 1)
        if kind == CHORD:
            if d == 2 and i == 1 and K.bv_access(aw, pos[0] - 1) == CHORD:
                continue  # same chord as the first side
            lo = min(p, q)
            hi = max(p, q)
            # chords with exactly one endpoint strictly inside (lo, hi)
            out, cnt = _enum(F, Sp, A, n, N, forced, RNc, V_NC, lo + 1, hi - 1, hi, True, u, D, out, cnt, collect)
            out, cnt = _enum(F, Sp, A, n, N, forced, RPc, V_PC, lo + 1, hi - 1, lo, False, u, D, out, cnt, collect)
            # arcs containing an endpoint of the chord
            out, cnt = _enum(F, Sp, A, n, N, forced, RNa, V_NA, 1, hi - 1, hi, True, u, D, out, cnt, collect)
            out, cnt = _enum(F, Sp, A, n, N, forced, RPa, V_PA, lo + 1, N, lo, False, u, D, out, cnt, collect)
            if wrap_scan:
                out, cnt = _wrap_candidates(F, Sp, A, n, N, forced, RN, lo, hi, True, u, D, out, cnt, collect)
        else:
            # a wrapping arc is handled as the pieces (p, N] and [1, q)
            npieces = 2 if i == d - 1 else 1
            for piece in range(npieces):
                if i < d - 1:
                    lo, hi = p, q
                elif piece == 0:
                    lo, hi = p, N + 1
                else:
                    lo, hi = 0, q
                # chord endpoints strictly inside the arc
                out, cnt = _enum(F, Sp, A, n, N, forced, RNc, V_NC, lo + 1, hi - 1, lo, True, u, D, out, cnt, collect)
                out, cnt = _enum(F, Sp, A, n, N, forced, RPc, V_PC, lo + 1, hi - 1, hi, False, u, D, out, cnt, collect)
                # arcs overlapping the arc
                out, cnt = _enum(F, Sp, A, n, N, forced, RNa, V_NA, 1, hi - 1, lo, True, u, D, out, cnt, collect)
                out, cnt = _enum(F, Sp, A, n, N, forced, RPa, V_PA, lo + 1, N, hi, False, u, D, out, cnt, collect)
                if wrap_scan:
                    out, cnt = _wrap_candidates(F, Sp, A, n, N, forced, RN, lo, hi, False, u, D, out, cnt, collect)
    return out, cnt


@njit(cache=True)
def neighborhood(F, Sp, A, n, N, forced, R, u, D, wrap_scan):
    """Distinct neighbours of u, then a second identical pass that clears
    the marks it set in D."""
    out = np.empty(16, dtype=np.int64)
    out, cnt = _neighborhood_pass(F, Sp, A, n, N, forced, R, u, D, out, True, wrap_scan)
    _neighborhood_pass(F, Sp, A, n, N, forced, R, u, D, out, False, wrap_scan)
    res = np.sort(out[:cnt])
    return res


@njit(cache=True)
def count_neighbors(F, Sp, A, n, N, forced, R, u, D, wrap_scan):
    """Size of the neighbourhood: one collecting pass, then the marks are
    cleared from the collected list instead of by a second pass."""
    out = np.empty(16, dtype=np.int64)
    out, cnt = _neighborhood_pass(F, Sp, A, n, N, forced, R, u, D, out, True, wrap_scan)
    for t in range(cnt):
        D[out[t]] = 0
    return cnt


@njit(cache=True)
def adjacent_many(F, Sp, A, n, N, us, vs):
    out = np.empty(us.shape[0], dtype=np.bool_)
    for t in range(us.shape[0]):
        out[t] = adjacent(F, Sp, A, n, N, us[t], vs[t])
    return out


@njit(cache=True)
def adjacency_matrix(F, Sp, A, n, N):
    """All pairs through the same merge, with each corner list read once."""
    aw, ar = A
    fw, fr = F
    sw, sr, sz, sl = Sp
    start = np.zeros(n + 2, dtype=np.int64)
    for u in range(1, n + 1):
        start[u + 1] = start[u] + corner_count(F, Sp, N, n, u)
    flat = np.empty(N, dtype=np.int64)
    for u in range(1, n + 1):
        flat[start[u]:start[u + 1]] = corners(F, Sp, N, n, u)
    m = np.zeros((n, n), dtype=np.bool_)
    for u in range(1, n + 1):
        pu = flat[start[u]:start[u + 1]]
        for v in range(u + 1, n + 1):
            if _merge_meets(aw, pu, flat[start[v]:start[v + 1]]):
                m[u - 1, v - 1] = True
                m[v - 1, u - 1] = True
    return m


@njit(cache=True)
def all_degrees(F, Sp, A, n, N, forced, R, D, wrap_scan):
    out = np.empty(n, dtype=np.int64)
    for u in range(1, n + 1):
        out[u - 1] = count_neighbors(F, Sp, A, n, N, forced, R, u, D, wrap_scan)
    return out
