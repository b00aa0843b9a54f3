"""Orthogonal range counting/reporting over points on an n x n grid.

Points are sorted by x; a unary column bitvector (one 1 per point, one 0
closing each column) maps x-ranges to ranges of the sorted order, and a
wavelet matrix over the y values (minus one) answers the y-restriction.
When every column holds exactly one point the map is the identity and the
column bitvector is dropped; its kernel arrays are then empty.
"""

import numpy as np
from numba import njit

from .errors import ContractError, RangeError, ValidationError
from .primitives import _kernels as K
from .primitives._kernels import leaf
from .primitives.bitvector import BitVector
from .primitives.sequence import LabelSequence


@leaf
def col_start(cw, cr, x):
    """Index (0-based, sorted order) of the first point with abscissa >= x."""
    if x <= 1:
        return 0
    if cr.shape[0] == 0:
        return x - 1
    return K.bv_select0(cw, cr, x - 1) - (x - 1)


@leaf
def col_end(cw, cr, x):
    if cr.shape[0] == 0:
        return x
    return K.bv_select0(cw, cr, x) - x


@leaf
def x_of(cw, cr, p):
    if cr.shape[0] == 0:
        return p + 1
    return K.bv_select1(cw, cr, p + 1) - p


@leaf
def grid_count(cw, cr, ww, wr, wz, wl, x1, x2, y1, y2):
    if x1 > x2 or y1 > y2:
        return 0
    s = col_start(cw, cr, x1)
    e = col_end(cw, cr, x2)
    return K.wm_count_less(ww, wr, wz, wl, s, e, y2) - K.wm_count_less(ww, wr, wz, wl, s, e, y1 - 1)


@njit(cache=True)
def grid_report_into(cw, cr, ww, wr, wz, wl, x1, x2, y1, y2, out_x, out_y, k):
    """Append reported points at slot ``k``; returns the new fill."""
    if x1 > x2 or y1 > y2:
        return k
    s = col_start(cw, cr, x1)
    e = col_end(cw, cr, x2)
    k2 = K.wm_report(ww, wr, wz, wl, s, e, y1 - 1, y2 - 1, out_x, out_y, k)
    for t in range(k, k2):
        out_x[t] = x_of(cw, cr, out_x[t])
        out_y[t] += 1
    return k2


@leaf
def grid_y(cw, cr, ww, wr, wz, wl, x):
    """y of the point in column x, or 0 when the column is empty."""
    s = col_start(cw, cr, x)
    if col_end(cw, cr, x) == s:
        return 0
    return K.wm_access(ww, wr, wz, wl, s) + 1


@leaf
def grid_x(cw, cr, ww, wr, wz, wl, y):
    """x of the point in row y; the row must be occupied."""
    return x_of(cw, cr, K.wm_select(ww, wr, wz, wl, y - 1, 1) - 1)


@njit(cache=True)
def _count_many(cw, cr, ww, wr, wz, wl, rects):
    out = np.empty(rects.shape[0], dtype=np.int64)
    for t in range(rects.shape[0]):
        out[t] = grid_count(cw, cr, ww, wr, wz, wl, rects[t, 0], rects[t, 1], rects[t, 2], rects[t, 3])
    return out


_NO_WORDS = np.zeros(0, dtype=np.uint64)
_NO_RANKS = np.zeros((0, 2), dtype=np.int64)


class PointGrid:
    """Points (x, y) with 1 <= x, y <= n answering count/report/Y/X."""

    def __init__(self, points=(), n=None):
        pts = np.asarray(list(points) if not isinstance(points, np.ndarray) else points, dtype=np.int64)
        pts = pts.reshape(-1, 2)
        if n is None:
            n = len(pts)
        self.n = int(n)
        if self.n < 0 or (self.n == 0 and len(pts)):
            raise ValidationError("grid side must cover the points", rule="grid-side")
        if len(pts) and (pts.min() < 1 or pts.max() > self.n):
            bad = pts[((pts < 1) | (pts > self.n)).any(axis=1)][0]
            raise ValidationError(f"point {tuple(int(v) for v in bad)} outside [1,{self.n}]^2", rule="grid-bounds")
        self.size = len(pts)
        order = np.lexsort((pts[:, 1], pts[:, 0])) if len(pts) else np.zeros(0, dtype=np.int64)
        xs = pts[order, 0]
        ys = pts[order, 1]
        per_col = np.bincount(xs, minlength=self.n + 1)[1:] if len(pts) else np.zeros(self.n, np.int64)
        self.distinct_x = bool(per_col.max(initial=0) <= 1)
        self.distinct_y = bool(len(np.unique(ys)) == len(ys))
        if self.n and bool((per_col == 1).all()):
            self.cols = None
        else:
            # unary column code: per column, one 1 per point then a closing 0
            bits = np.ones(self.size + self.n, dtype=np.bool_)
            bits[np.cumsum(per_col + 1) - 1] = False
            self.cols = BitVector(bits)
        self.ys = LabelSequence(ys - 1, max(self.n, 1))

    @property
    def kernel(self):
        s = self.ys
        if self.cols is None:
            return (_NO_WORDS, _NO_RANKS, s.words, s.sb_ranks, s.zeros, s.levels)
        c = self.cols
        return (c.words, c.sb_ranks, s.words, s.sb_ranks, s.zeros, s.levels)

    def __len__(self):
        return self.size

    def _check_rect(self, x1, x2, y1, y2):
        if x1 < 1 or y1 < 1 or x2 > self.n or y2 > self.n:
            raise RangeError(f"rectangle [{x1},{x2}]x[{y1},{y2}] outside [1,{self.n}]^2")

    def count(self, x1, x2, y1, y2):
        """Points in [x1, x2] x [y1, y2]; an empty rectangle counts 0."""
        if x1 > x2 or y1 > y2:
            return 0
        self._check_rect(x1, x2, y1, y2)
        return int(grid_count(*self.kernel, x1, x2, y1, y2))

    def count_many(self, rects):
        rects = np.asarray(rects, dtype=np.int64).reshape(-1, 4)
        live = (rects[:, 0] <= rects[:, 1]) & (rects[:, 2] <= rects[:, 3])
        r = rects[live]
        if len(r) and (r[:, [0, 2]].min() < 1 or r[:, [1, 3]].max() > self.n):
            raise RangeError("rectangle outside the grid")
        return _count_many(*self.kernel, rects)

    def report(self, x1, x2, y1, y2):
        """Points in the rectangle as (x, y) tuples sorted by x then y."""
        if x1 > x2 or y1 > y2:
            return []
        self._check_rect(x1, x2, y1, y2)
        kern = self.kernel
        total = int(grid_count(*kern, x1, x2, y1, y2))
        out_x = np.empty(total, dtype=np.int64)
        out_y = np.empty(total, dtype=np.int64)
        grid_report_into(*kern, x1, x2, y1, y2, out_x, out_y, 0)
        order = np.lexsort((out_y, out_x))
        return [(int(a), int(b)) for a, b in zip(out_x[order], out_y[order])]

    def y_of(self, x):
        """The y paired with column x, or None for an empty column."""
        if not self.distinct_x:
            raise ContractError("Y query needs pairwise-distinct x coordinates")
        if not 1 <= x <= self.n:
            raise RangeError(f"x={x} outside 1..{self.n}")
        y = int(grid_y(*self.kernel, x))
        return y or None

    def x_of(self, y):
        if not self.distinct_y:
            raise ContractError("X query needs pairwise-distinct y coordinates")
        if not 1 <= y <= self.n:
            raise RangeError(f"y={y} outside 1..{self.n}")
        if self.ys.count(y - 1) == 0:
            return None
        return int(grid_x(*self.kernel, y))

    def points(self):
        return self.report(1, self.n, 1, self.n) if self.n else []

    def bits_used(self):
        cols = 0 if self.cols is None else self.cols.bits_used()
        return cols + self.ys.bits_used() + 2 * 64

    def arrays(self):
        dense = self.cols is None
        meta = np.array([self.n, self.size, int(self.distinct_x), int(self.distinct_y), int(dense)], dtype=np.int64)
        cols = [] if dense else self.cols.arrays()
        return [meta, *cols, *self.ys.arrays()]

    @classmethod
    def from_arrays(cls, arrs):
        g = cls.__new__(cls)
        meta = arrs[0]
        g.n, g.size = int(meta[0]), int(meta[1])
        g.distinct_x, g.distinct_y = bool(meta[2]), bool(meta[3])
        if meta[4]:
            g.cols = None
            rest = arrs[1:]
        else:
            g.cols = BitVector.from_arrays(arrs[1:4])
            rest = arrs[4:]
        g.ys = LabelSequence.from_arrays(rest)
        return g

    def __repr__(self):
        return f"PointGrid(n={self.n}, points={self.size})"
