"""Numba kernels behind the primitive structures.

Conventions used throughout:

* a bitvector is the pair ``(words, sb_ranks)``: ``words`` is a uint64
  array holding bit ``p`` (0-based) at ``words[p >> 6] >> (p & 63)``;
  ``sb_cum(sb_ranks, s)`` is the number of ones in the first ``512 * s``
  bits and ``sb_sub(sb_ranks, s)`` packs the ones before words 1..7 of
  superblock s in 9-bit fields (two superblocks per row, see
  ``bitvector.superblock_ranks``);
* ``rank1(bv, i)`` counts ones among the first ``i`` bits;
* ``select*`` take a 1-based occurrence number and return a 1-based position.

Callers validate bounds; the kernels trust their arguments.
"""

import numpy as np
from llvmlite import ir
from numba import njit, types
from numba.extending import intrinsic


def leaf(fn):
    """Compile without reference counting.  For kernels that never allocate;
    it removes the per-call atomic increments on every array argument,
    which otherwise dominate the cost of a rank."""
    return njit(cache=True, _nrt=False)(fn)


SB_BITS = 512
SB_SHIFT = 9
WORDS_PER_SB = 8

_ONE = np.uint64(1)
_FF = np.uint64(0xFF)
_LO16 = np.uint64(0xFFFF)
_LO32 = np.uint64(0xFFFFFFFF)
_CUM = np.int64(0xFFFFFFFF)


def _byte_tables():
    bmin = np.zeros(256, dtype=np.int64)
    bpos = np.zeros(256, dtype=np.int64)
    bdelta = np.zeros(256, dtype=np.int64)
    for b in range(256):
        e = 0
        best = 9
        where = 0
        for k in range(8):
            e += 1 if (b >> k) & 1 else -1
            if e <= best:
                best = e
                where = k + 1
        bmin[b] = best
        bpos[b] = where
        bdelta[b] = e
    return bmin, bpos, bdelta


# min prefix excess over the 8 bits of a byte (LSB first), the rightmost
# bit count attaining it, and the byte's total excess
BYTE_MIN, BYTE_POS, BYTE_DELTA = _byte_tables()

# BYTE_SELECT[b, r] = index of the (r+1)-th set bit of byte b
BYTE_SELECT = np.zeros((256, 8), dtype=np.int64)
for _b in range(256):
    for _r, _k in enumerate(k for k in range(8) if (_b >> k) & 1):
        BYTE_SELECT[_b, _r] = _k


@intrinsic
def _ctpop(typingctx, x):
    def codegen(context, builder, signature, args):
        return builder.ctpop(args[0])
    return types.uint64(types.uint64), codegen


@intrinsic
def _cttz(typingctx, x):
    def codegen(context, builder, signature, args):
        return builder.cttz(args[0], ir.Constant(ir.IntType(1), 0))
    return types.uint64(types.uint64), codegen


@leaf
def popcount64(x):
    return np.int64(_ctpop(np.uint64(x)))


@leaf
def select_in_word(x, r):
    """0-based index of the r-th (1-based) set bit of ``x``."""
    shift = 0
    c = popcount64(x & _LO32)
    t = 32 if r > c else 0
    r -= c if t else 0
    shift += t
    y = x >> np.uint64(shift)
    c = popcount64(y & _LO16)
    t = 16 if r > c else 0
    r -= c if t else 0
    shift += t
    y = x >> np.uint64(shift)
    c = popcount64(y & _FF)
    t = 8 if r > c else 0
    r -= c if t else 0
    shift += t
    b = np.int64((x >> np.uint64(shift)) & _FF)
    return shift + BYTE_SELECT[b, r - 1]


@leaf
def bv_access(words, p):
    """Bit at 0-based index ``p``."""
    return np.int64((words[p >> 6] >> np.uint64(p & 63)) & _ONE)


@leaf
def _sub_before(sub, k):
    # ones before word k of a superblock, from its packed 9-bit counts
    sh = 9 * (k - 1) if k > 0 else 63
    return (sub >> sh) & 511


@leaf
def sb_cum(sb, s):
    return (sb[s >> 1, 0] >> (32 * (s & 1))) & _CUM


@leaf
def sb_sub(sb, s):
    return sb[s >> 1, 1 + (s & 1)]


@leaf
def bv_rank1(words, sb_ranks, i):
    w = i >> 6
    s = i >> SB_SHIFT
    r = sb_cum(sb_ranks, s) + _sub_before(sb_sub(sb_ranks, s), w & 7)
    return r + popcount64(words[w] & ((_ONE << np.uint64(i & 63)) - _ONE))


@leaf
def bv_select1(words, sb_ranks, j):
    # largest superblock s with fewer than j ones before it
    lo = 0
    hi = 2 * sb_ranks.shape[0] - 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if sb_cum(sb_ranks, mid) < j:
            lo = mid
        else:
            hi = mid
    r = j - sb_cum(sb_ranks, lo)
    sub = sb_sub(sb_ranks, lo)
    k = 0
    for q in range(1, WORDS_PER_SB):
        k += 1 if _sub_before(sub, q) < r else 0
    w = lo * WORDS_PER_SB + k
    return w * 64 + select_in_word(words[w], r - _sub_before(sub, k)) + 1


@leaf
def bv_select0(words, sb_ranks, j):
    lo = 0
    hi = 2 * sb_ranks.shape[0] - 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if mid * SB_BITS - sb_cum(sb_ranks, mid) < j:
            lo = mid
        else:
            hi = mid
    r = j - (lo * SB_BITS - sb_cum(sb_ranks, lo))
    sub = sb_sub(sb_ranks, lo)
    k = 0
    for q in range(1, WORDS_PER_SB):
        k += 1 if 64 * q - _sub_before(sub, q) < r else 0
    w = lo * WORDS_PER_SB + k
    return w * 64 + select_in_word(~words[w], r - (64 * k - _sub_before(sub, k))) + 1


# Row-indexed copies of the above for the levels of a wavelet matrix;
# slicing a row out of a 2-d array on every call is measurably slower.


@leaf
def _bit2(w2, lv, p):
    return np.int64((w2[lv, p >> 6] >> np.uint64(p & 63)) & _ONE)


@leaf
def _cum2(r2, lv, s):
    return (r2[lv, s >> 1, 0] >> (32 * (s & 1))) & _CUM


@leaf
def _rank2(w2, r2, lv, i):
    w = i >> 6
    s = i >> SB_SHIFT
    r = _cum2(r2, lv, s) + _sub_before(r2[lv, s >> 1, 1 + (s & 1)], w & 7)
    return r + popcount64(w2[lv, w] & ((_ONE << np.uint64(i & 63)) - _ONE))


@leaf
def _select2(w2, r2, lv, j, one):
    lo = 0
    hi = 2 * r2.shape[1] - 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        c = _cum2(r2, lv, mid)
        if not one:
            c = mid * SB_BITS - c
        if c < j:
            lo = mid
        else:
            hi = mid
    c = _cum2(r2, lv, lo)
    r = j - (c if one else lo * SB_BITS - c)
    sub = r2[lv, lo >> 1, 1 + (lo & 1)]
    k = 0
    for q in range(1, WORDS_PER_SB):
        c = _sub_before(sub, q) if one else 64 * q - _sub_before(sub, q)
        k += 1 if c < r else 0
    w = lo * WORDS_PER_SB + k
    r -= _sub_before(sub, k) if one else 64 * k - _sub_before(sub, k)
    x = w2[lv, w] if one else ~w2[lv, w]
    return w * 64 + select_in_word(x, r) + 1


# ---------------------------------------------------------------- wavelet
# A wavelet matrix is (words2d, ranks2d, zeros, levels); row l of
# words2d/ranks2d is the bitvector of level l (most significant bit first).


@leaf
def wm_access(words2d, ranks2d, zeros, levels, p):
    """Symbol at 0-based index ``p``."""
    c = 0
    for lv in range(levels):
        b = _bit2(words2d, lv, p)
        r1 = _rank2(words2d, ranks2d, lv, p)
        c = (c << 1) | b
        if b:
            p = zeros[lv] + r1
        else:
            p = p - r1
    return c


@leaf
def wm_access_block(words2d, ranks2d, zeros, levels, p, length):
    """Symbol c at 0-based index ``p`` together with the bottom-level index
    of that occurrence and the bottom-level block [s, e) holding every c."""
    c = 0
    s = 0
    e = length
    for lv in range(levels):
        b = _bit2(words2d, lv, p)
        r1 = _rank2(words2d, ranks2d, lv, p)
        rs = _rank2(words2d, ranks2d, lv, s)
        re = _rank2(words2d, ranks2d, lv, e)
        c = (c << 1) | b
        if b:
            p = zeros[lv] + r1
            s = zeros[lv] + rs
            e = zeros[lv] + re
        else:
            p = p - r1
            s = s - rs
            e = e - re
    return c, p, s, e


@leaf
def wm_block(words2d, ranks2d, zeros, levels, c, length):
    """Bottom-level [start, end) of symbol c's block."""
    s = 0
    e = length
    for lv in range(levels):
        b = (c >> (levels - 1 - lv)) & 1
        rs = _rank2(words2d, ranks2d, lv, s)
        re = _rank2(words2d, ranks2d, lv, e)
        if b:
            s = zeros[lv] + rs
            e = zeros[lv] + re
        else:
            s = s - rs
            e = e - re
    return s, e


@leaf
def wm_rank(words2d, ranks2d, zeros, levels, c, i):
    """Occurrences of ``c`` among the first ``i`` symbols."""
    s, e = wm_block(words2d, ranks2d, zeros, levels, c, i)
    return e - s


@leaf
def _wm_lift(words2d, ranks2d, zeros, levels, c, p):
    # map a 0-based bottom-level index of symbol c back to the original order
    for lv in range(levels - 1, -1, -1):
        b = (c >> (levels - 1 - lv)) & 1
        if b:
            p = _select2(words2d, ranks2d, lv, p - zeros[lv] + 1, True) - 1
        else:
            p = _select2(words2d, ranks2d, lv, p + 1, False) - 1
    return p


@leaf
def wm_select(words2d, ranks2d, zeros, levels, c, j):
    """1-based position of the j-th ``c``."""
    s = 0
    for lv in range(levels):
        b = (c >> (levels - 1 - lv)) & 1
        rs = _rank2(words2d, ranks2d, lv, s)
        if b:
            s = zeros[lv] + rs
        else:
            s = s - rs
    return _wm_lift(words2d, ranks2d, zeros, levels, c, s + j - 1) + 1


@leaf
def wm_count_less(words2d, ranks2d, zeros, levels, x, y, v):
    """Symbols < v among 0-based indices [x, y)."""
    if v <= 0 or x >= y:
        return 0
    if v >= (1 << levels):
        return y - x
    res = 0
    for lv in range(levels):
        b = (v >> (levels - 1 - lv)) & 1
        rs = _rank2(words2d, ranks2d, lv, x)
        re = _rank2(words2d, ranks2d, lv, y)
        if b:
            res += (y - x) - (re - rs)
            x = zeros[lv] + rs
            y = zeros[lv] + re
        else:
            x = x - rs
            y = y - re
    return res


@njit(cache=True)
def wm_report(words2d, ranks2d, zeros, levels, x, y, lo, hi, out_pos, out_val, k):
    """Append (index, symbol) of every symbol in [lo, hi] within [x, y).

    Writes from slot ``k`` of the output arrays and returns the new fill.
    """
    if x >= y or lo > hi:
        return k
    cap = 2 * levels + 4
    st_l = np.empty(cap, dtype=np.int64)
    st_s = np.empty(cap, dtype=np.int64)
    st_e = np.empty(cap, dtype=np.int64)
    st_p = np.empty(cap, dtype=np.int64)
    top = 0
    st_l[0] = 0
    st_s[0] = x
    st_e[0] = y
    st_p[0] = 0
    top = 1
    while top > 0:
        top -= 1
        lv = st_l[top]
        s = st_s[top]
        e = st_e[top]
        pre = st_p[top]
        if s >= e:
            continue
        width = levels - lv
        vlo = pre << width
        vhi = ((pre + 1) << width) - 1
        if vhi < lo or vlo > hi:
            continue
        if lv == levels:
            for q in range(s, e):
                out_pos[k] = _wm_lift(words2d, ranks2d, zeros, levels, pre, q)
                out_val[k] = pre
                k += 1
            continue
        rs = _rank2(words2d, ranks2d, lv, s)
        re = _rank2(words2d, ranks2d, lv, e)
        # push the one-child first so the zero-child is expanded first
        st_l[top] = lv + 1
        st_s[top] = zeros[lv] + rs
        st_e[top] = zeros[lv] + re
        st_p[top] = (pre << 1) | 1
        top += 1
        st_l[top] = lv + 1
        st_s[top] = s - rs
        st_e[top] = e - re
        st_p[top] = pre << 1
        top += 1
    return k


# -------------------------------------------------------------------- rmq
# The range-arg index is (bp_words, bp_ranks, word_min, sb_min, sparse):
# the stack encoding of the Cartesian tree (push = 1, pop = 0), the minimum
# prefix excess inside each 64-bit word (relative to the word start, int8)
# and inside each 512-bit superblock (absolute, int32), and a sparse table
# holding the rightmost superblock attaining the minimum over power-of-two
# windows.


@njit(cache=True)
def build_stack_bits(vals, want_max):
    n = vals.shape[0]
    bits = np.zeros(2 * n, dtype=np.bool_)
    stack = np.empty(n, dtype=np.int64)
    top = 0
    pos = 0
    for k in range(n):
        v = vals[k]
        if want_max:
            while top > 0 and vals[stack[top - 1]] < v:
                top -= 1
                pos += 1
        else:
            while top > 0 and vals[stack[top - 1]] > v:
                top -= 1
                pos += 1
        bits[pos] = True
        pos += 1
        stack[top] = k
        top += 1
    return bits[:pos]


@njit(cache=True)
def superblock_min_excess(bits):
    m = bits.shape[0]
    nsb = (m + SB_BITS - 1) >> SB_SHIFT
    out = np.empty(nsb, dtype=np.int32)
    e = 0
    for s in range(nsb):
        best = 1 << 30
        end = min(m, (s + 1) * SB_BITS)
        for p in range(s * SB_BITS, end):
            e += 1 if bits[p] else -1
            if e < best:
                best = e
        out[s] = best
    return out


@njit(cache=True)
def word_min_excess(bits):
    m = bits.shape[0]
    nw = (m + 63) >> 6
    out = np.empty(nw, dtype=np.int8)
    for w in range(nw):
        e = 0
        best = 127
        for p in range(w * 64, min(m, (w + 1) * 64)):
            e += 1 if bits[p] else -1
            if e < best:
                best = e
        out[w] = best
    return out


@njit(cache=True)
def build_sparse_rightmost(vals):
    m = vals.shape[0]
    levels = 1
    while (1 << levels) <= m:
        levels += 1
    table = np.empty((levels, max(m, 1)), dtype=np.int32)
    for i in range(m):
        table[0, i] = i
    for k in range(1, levels):
        half = 1 << (k - 1)
        for i in range(m - (1 << k) + 1):
            a = table[k - 1, i]
            b = table[k - 1, i + half]
            table[k, i] = b if vals[b] <= vals[a] else a
    return table


@leaf
def _sparse_query(vals, table, lo, hi):
    length = hi - lo + 1
    k = 0
    while (2 << k) <= length:
        k += 1
    a = table[k, lo]
    b = table[k, hi - (1 << k) + 1]
    return b if vals[b] <= vals[a] else a


@leaf
def _word_delta(words, w):
    return 2 * popcount64(words[w]) - 64


@leaf
def _resolve_word(words, w, e, target):
    # rightmost prefix length inside word w whose excess equals target
    p = w * 64
    found = p
    for _ in range(8):
        b = np.int64((words[p >> 6] >> np.uint64(p & 63)) & _FF)
        if e + BYTE_MIN[b] == target:
            found = p + BYTE_POS[b]
        e += BYTE_DELTA[b]
        p += 8
    return found


@leaf
def min_excess_rightmost(words, sb_ranks, word_min, sb_min, sparse, x, y):
    """Minimum of excess(p) over prefix lengths x <= p <= y and the
    rightmost p attaining it.

    Walks bits, then bytes, then words up to a superblock boundary, jumps
    over whole superblocks with the sparse table, and walks back down on
    the right.  A minimum found at word or superblock granularity is only
    pinned to a bit position once, at the end.
    """
    e = 2 * bv_rank1(words, sb_ranks, x) - x
    best = e
    bpos = x
    pend_w = -1
    pend_e = 0
    p = x
    while p < y and (p & 7) != 0:
        e += 1 if bv_access(words, p) else -1
        p += 1
        if e <= best:
            best = e
            bpos = p
            pend_w = -1
    while p + 8 <= y and (p & 63) != 0:
        b = np.int64((words[p >> 6] >> np.uint64(p & 63)) & _FF)
        if e + BYTE_MIN[b] <= best:
            best = e + BYTE_MIN[b]
            bpos = p + BYTE_POS[b]
            pend_w = -1
        e += BYTE_DELTA[b]
        p += 8
    while p + 64 <= y and (p & (SB_BITS - 1)) != 0:
        w = p >> 6
        if e + word_min[w] <= best:
            best = e + word_min[w]
            pend_w = w
            pend_e = e
        e += _word_delta(words, w)
        p += 64
    if p + SB_BITS <= y:
        s1 = p >> SB_SHIFT
        s2 = (y >> SB_SHIFT) - 1
        s = _sparse_query(sb_min, sparse, s1, s2)
        m = np.int64(sb_min[s])
        if m <= best:
            best = m
            q = s * SB_BITS
            ew = 2 * sb_cum(sb_ranks, s) - q
            for w in range(s * WORDS_PER_SB, (s + 1) * WORDS_PER_SB):
                if ew + word_min[w] == m:
                    pend_w = w
                    pend_e = ew
                ew += _word_delta(words, w)
        p = (s2 + 1) * SB_BITS
        e = 2 * sb_cum(sb_ranks, s2 + 1) - p
    while p + 64 <= y:
        w = p >> 6
        if e + word_min[w] <= best:
            best = e + word_min[w]
            pend_w = w
            pend_e = e
        e += _word_delta(words, w)
        p += 64
    while p + 8 <= y:
        b = np.int64((words[p >> 6] >> np.uint64(p & 63)) & _FF)
        if e + BYTE_MIN[b] <= best:
            best = e + BYTE_MIN[b]
            bpos = p + BYTE_POS[b]
            pend_w = -1
        e += BYTE_DELTA[b]
        p += 8
    while p < y:
        e += 1 if bv_access(words, p) else -1
        p += 1
        if e <= best:
            best = e
            bpos = p
            pend_w = -1
    if pend_w >= 0:
        bpos = _resolve_word(words, pend_w, pend_e, best)
    return best, bpos


@leaf
def rmq_query(words, sb_ranks, word_min, sb_min, sparse, i, j):
    """Leftmost extremal position in [i, j] (1-based)."""
    if i == j:
        return i
    pi = bv_select1(words, sb_ranks, i)
    pj = bv_select1(words, sb_ranks, j)
    depth_i = 2 * i - pi
    m, t = min_excess_rightmost(words, sb_ranks, word_min, sb_min, sparse, pi, pj)
    if m >= depth_i:
        return i
    # the push right after the last minimum is the answer
    return bv_rank1(words, sb_ranks, t + 1)
