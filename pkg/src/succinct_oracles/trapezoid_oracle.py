"""Trapezoid-graph oracle: a 4-symbol corner sequence and three point grids.

All 4n corners are projected onto one line; S[i] names the kind of the i-th
one (0 = a, 1 = b on the top line, 2 = c, 3 = d on the bottom line).  With
b' = rank1(S, b), c' = rank2(S, c), d' = rank3(S, d) the grids are

    P1 = {(v, b'_v)}    P2 = {(v, c'_v)}    P3 = {(b'_v, d'_v)}

Two trapezoids miss each other iff one lies strictly left of the other on
*both* lines, which is one dominance count on P2 (who is right of v) and
one on P3 (who is left of v).

``literal=True`` switches to the cross-line max/min comparisons
(``max(b_u, d_u) < min(a_v, c_v)`` and friends).  Those are wrong for
slanted trapezoids and exist only to study the difference.
"""

import threading

import numpy as np
from numba import njit

from . import grid2d as G2
from .diagrams import ClassTag, TrapezoidDiagram, validate
from .errors import RangeError, ValidationError
from .grid2d import PointGrid
from .primitives import LabelSequence
from .primitives import _kernels as K
from .primitives._kernels import leaf

A, B, C, D = 0, 1, 2, 3


@leaf
def _sel(S, c, j):
    w, r, z, lv = S
    return K.wm_select(w, r, z, lv, c, j)


@leaf
def _rank(S, c, i):
    w, r, z, lv = S
    return K.wm_rank(w, r, z, lv, c, i)


@leaf
def _y(G, x):
    cw, cr, ww, wr, wz, wl = G
    return G2.grid_y(cw, cr, ww, wr, wz, wl, x)


@leaf
def _x(G, y):
    cw, cr, ww, wr, wz, wl = G
    return G2.grid_x(cw, cr, ww, wr, wz, wl, y)


@leaf
def _count(G, x1, x2, y1, y2):
    cw, cr, ww, wr, wz, wl = G
    return G2.grid_count(cw, cr, ww, wr, wz, wl, x1, x2, y1, y2)


@leaf
def corners(S, P1, P2, P3, v):
    """Merged positions (a, b, c, d) of trapezoid v."""
    bp = _y(P1, v)
    return _sel(S, A, v), _sel(S, B, bp), _sel(S, C, _y(P2, v)), _sel(S, D, _y(P3, bp))


@leaf
def split_points(S, P1, P2, P3, v, literal):
    """(px, py, qx, qy): right-disjoint trapezoids are the P2 points in
    [px, n] x [py, n], left-disjoint ones the P3 points in [1, qx] x [1, qy]."""
    a, b, c, d = corners(S, P1, P2, P3, v)
    if literal:
        hi = max(b, d)
        lo = min(a, c)
        return _rank(S, A, hi), _rank(S, C, hi), _rank(S, B, lo), _rank(S, D, lo)
    return _rank(S, A, b) + 1, _rank(S, C, d) + 1, _rank(S, B, a), _rank(S, D, c)


@leaf
def adjacent(S, P1, P2, P3, u, v, literal):
    if u == v:
        return False
    au, bu, cu, du = corners(S, P1, P2, P3, u)
    av, bv, cv, dv = corners(S, P1, P2, P3, v)
    if literal:
        return not (max(bu, du) < min(av, cv) or min(au, cu) > max(bv, dv))
    return not ((bu < av and du < cv) or (bv < au and dv < cu))


@leaf
def degree(S, P1, P2, P3, n, v, literal):
    px, py, qx, qy = split_points(S, P1, P2, P3, v, literal)
    return n - 1 - _count(P2, px, n, py, n) - _count(P3, 1, qx, 1, qy)


@njit(cache=True)
def _report(G, x1, x2, y1, y2, xs, ys, k):
    cw, cr, ww, wr, wz, wl = G
    return G2.grid_report_into(cw, cr, ww, wr, wz, wl, x1, x2, y1, y2, xs, ys, k)


@njit(cache=True)
def neighborhood(S, P1, P2, P3, n, v, literal, cnt):
    """Vertices in both complements, minus v.  ``cnt`` (length n + 1, all
    zero) is per-thread scratch and is left zeroed."""
    px, py, qx, qy = split_points(S, P1, P2, P3, v, literal)
    c1 = _count(P2, 1, px - 1, 1, n) + _count(P2, px, n, 1, py - 1)
    c2 = _count(P3, 1, n, qy + 1, n) + _count(P3, qx + 1, n, 1, qy)
    x1 = np.empty(c1, dtype=np.int64)
    y1 = np.empty(c1, dtype=np.int64)
    k = _report(P2, 1, px - 1, 1, n, x1, y1, 0)
    _report(P2, px, n, 1, py - 1, x1, y1, k)
    x2 = np.empty(c2, dtype=np.int64)
    y2 = np.empty(c2, dtype=np.int64)
    k = _report(P3, 1, n, qy + 1, n, x2, y2, 0)
    _report(P3, qx + 1, n, 1, qy, x2, y2, k)
    for w in x1:
        cnt[w] += 1
    m = 0
    for t in range(c2):
        w = _x(P1, x2[t])
        x2[t] = w
        cnt[w] += 1
        if cnt[w] == 2 and w != v:
            m += 1
    out = np.empty(m, dtype=np.int64)
    m = 0
    for w in x2:
        if cnt[w] >= 2 and w != v:
            out[m] = w
            m += 1
            cnt[w] = 0
    for w in x1:
        cnt[w] = 0
    for w in x2:
        cnt[w] = 0
    out.sort()
    return out


@njit(cache=True)
def adjacent_many(S, P1, P2, P3, us, vs, literal):
    out = np.empty(us.shape[0], dtype=np.bool_)
    for t in range(us.shape[0]):
        out[t] = adjacent(S, P1, P2, P3, us[t], vs[t], literal)
    return out


@njit(cache=True)
def all_degrees(S, P1, P2, P3, n, literal):
    out = np.empty(n, dtype=np.int64)
    for v in range(1, n + 1):
        out[v - 1] = degree(S, P1, P2, P3, n, v, literal)
    return out


@njit(cache=True)
def adjacency_matrix(S, P1, P2, P3, n, literal, cnt):
    m = np.zeros((n, n), dtype=np.bool_)
    for v in range(1, n + 1):
        for u in neighborhood(S, P1, P2, P3, n, v, literal, cnt):
            m[v - 1, u - 1] = True
    return m


class TrapezoidOracle:
    """Trapezoid graph from a canonical TrapezoidDiagram (a-order labels)."""

    cls = ClassTag.TRAPEZOID

    def __init__(self, literal=False):
        self.n = 0
        self.literal = bool(literal)
        self.degrees = None
        self._scratch = threading.local()

    @classmethod
    def build(cls, diagram, explicit_degrees=False, literal=False):
        if not isinstance(diagram, TrapezoidDiagram):
            raise ValidationError(f"{type(diagram).__name__} given for class trapezoid", rule="class-mismatch")
        validate(diagram, ClassTag.TRAPEZOID)
        o = cls(literal)
        n = o.n = diagram.n
        sym = np.empty(4 * n, dtype=np.int64)
        for code, pos in enumerate((diagram.a, diagram.b, diagram.c, diagram.d)):
            sym[pos - 1] = code
        o.S = LabelSequence(sym, 4)
        # rank_j(S, p) for every corner of kind j
        ranks = np.zeros(4 * n, dtype=np.int64)
        for code in range(4):
            hit = sym == code
            ranks[hit] = np.arange(1, n + 1)
        bp, cp, dp = ranks[diagram.b - 1], ranks[diagram.c - 1], ranks[diagram.d - 1]
        ids = np.arange(1, n + 1)
        o.P1 = PointGrid(np.column_stack([ids, bp]), n)
        o.P2 = PointGrid(np.column_stack([ids, cp]), n)
        o.P3 = PointGrid(np.column_stack([bp, dp]), n)
        if explicit_degrees:
            o.degrees = o.all_degrees()
        return o

    @property
    def _k(self):
        return self.S.kernel, self.P1.kernel, self.P2.kernel, self.P3.kernel

    def scratch(self):
        """The calling thread's occurrence counters (length n + 1)."""
        cnt = getattr(self._scratch, "cnt", None)
        if cnt is None or cnt.shape[0] != self.n + 1:
            cnt = np.zeros(self.n + 1, dtype=np.uint8)
            self._scratch.cnt = cnt
        return cnt

    @property
    def N(self):
        """Number of endpoints on the line."""
        return 4 * self.n

    def _check(self, v):
        if not 1 <= v <= self.n:
            raise RangeError(f"vertex {v} outside 1..{self.n}")

    def corner_positions(self, v):
        self._check(v)
        return tuple(int(p) for p in corners(*self._k, v))

    def split_points(self, v):
        self._check(v)
        return tuple(int(p) for p in split_points(*self._k, v, self.literal))

    def adjacent(self, u, v):
        self._check(u)
        self._check(v)
        return bool(adjacent(*self._k, u, v, self.literal))

    def degree(self, v):
        self._check(v)
        if self.degrees is not None:
            return int(self.degrees[v - 1])
        return int(degree(*self._k, self.n, v, self.literal))

    def neighborhood(self, v):
        self._check(v)
        return neighborhood(*self._k, self.n, v, self.literal, self.scratch())

    def adjacent_many(self, us, vs):
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.size and (min(us.min(), vs.min()) < 1 or max(us.max(), vs.max()) > self.n):
            raise RangeError("vertex out of range")
        return adjacent_many(*self._k, us, vs, self.literal)

    def all_degrees(self):
        return all_degrees(*self._k, self.n, self.literal)

    def adjacency_matrix(self):
        return adjacency_matrix(*self._k, self.n, self.literal, self.scratch())

    def space_report(self):
        rep = {"S": self.S.bits_used(), "P1": self.P1.bits_used(), "P2": self.P2.bits_used(), "P3": self.P3.bits_used()}
        rep["degrees"] = 0 if self.degrees is None else 64 * int(self.degrees.size)
        rep["header"] = 64
        rep["total"] = sum(rep.values())
        return rep

    def bits_used(self):
        return self.space_report()["total"]

    def arrays(self):
        sections = [self.S.arrays(), self.P1.arrays(), self.P2.arrays(), self.P3.arrays()]
        if self.degrees is not None:
            sections.append([self.degrees])
        return sections

    @classmethod
    def from_arrays(cls, n, sections, literal=False):
        o = cls(literal)
        o.n = int(n)
        o.S = LabelSequence.from_arrays(sections[0])
        o.P1, o.P2, o.P3 = (PointGrid.from_arrays(s) for s in sections[1:4])
        o.degrees = sections[4][0] if len(sections) > 4 else None
        return o

    def __repr__(self):
        return f"TrapezoidOracle(n={self.n}{', literal' if self.literal else ''})"
