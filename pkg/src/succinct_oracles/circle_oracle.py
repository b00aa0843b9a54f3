"""Circle-graph oracle built on the overlap model.

Cut the circle at point 1 and every chord becomes an interval; two chords
cross exactly when their intervals overlap without nesting.  The structure
keeps an endpoint bitvector S (0 at a left end, 1 at a right end) and one
point grid P holding (v, rank1(S, e_v)) for every vertex.  With vertices
numbered by left endpoint, rank0 at s_v is v itself, so

    R1 = [1, v-1] x [rank1(s_v)+1, rank1(e_v)]       crossing from the left
    R2 = [v+1, rank0(e_v)] x [rank1(e_v)+1, n]         crossing from the right

count and report the neighbours without touching any other vertex.
"""

import numpy as np
from numba import njit

from . import grid2d as G2
from .diagrams import ChordDiagram, ClassTag, validate
from .errors import RangeError, ValidationError
from .grid2d import PointGrid
from .primitives import BitVector
from .primitives import _kernels as K
from .primitives._kernels import leaf


@leaf
def endpoints(Sw, Sr, G, v):
    """(s_v, e_v, rank1(S, e_v)) for vertex v."""
    cw, cr, ww, wr, wz, wl = G
    ep = G2.grid_y(cw, cr, ww, wr, wz, wl, v)
    return K.bv_select0(Sw, Sr, v), K.bv_select1(Sw, Sr, ep), ep


@leaf
def rects(Sw, Sr, G, n, v):
    s, e, ep = endpoints(Sw, Sr, G, v)
    return 1, v - 1, s - v + 1, ep, v + 1, e - ep, ep + 1, n


@leaf
def degree(Sw, Sr, G, n, v):
    cw, cr, ww, wr, wz, wl = G
    x1, x2, y1, y2, x3, x4, y3, y4 = rects(Sw, Sr, G, n, v)
    return (G2.grid_count(cw, cr, ww, wr, wz, wl, x1, x2, y1, y2)
            + G2.grid_count(cw, cr, ww, wr, wz, wl, x3, x4, y3, y4))


@leaf
def adjacent(Sw, Sr, G, u, v):
    if u == v:
        return False
    su, eu, _ = endpoints(Sw, Sr, G, u)
    sv, ev, _ = endpoints(Sw, Sr, G, v)
    return (su < sv < eu < ev) or (sv < su < ev < eu)


@njit(cache=True)
def neighborhood(Sw, Sr, G, n, v):
    cw, cr, ww, wr, wz, wl = G
    x1, x2, y1, y2, x3, x4, y3, y4 = rects(Sw, Sr, G, n, v)
    c1 = G2.grid_count(cw, cr, ww, wr, wz, wl, x1, x2, y1, y2)
    c2 = G2.grid_count(cw, cr, ww, wr, wz, wl, x3, x4, y3, y4)
    xs = np.empty(c1 + c2, dtype=np.int64)
    ys = np.empty(c1 + c2, dtype=np.int64)
    k = G2.grid_report_into(cw, cr, ww, wr, wz, wl, x1, x2, y1, y2, xs, ys, 0)
    G2.grid_report_into(cw, cr, ww, wr, wz, wl, x3, x4, y3, y4, xs, ys, k)
    # R1 hits all lie left of v and R2 hits right of it
    xs[:k].sort()
    xs[k:].sort()
    return xs


@njit(cache=True)
def adjacent_many(Sw, Sr, G, us, vs):
    out = np.empty(us.shape[0], dtype=np.bool_)
    for t in range(us.shape[0]):
        out[t] = adjacent(Sw, Sr, G, us[t], vs[t])
    return out


@njit(cache=True)
def all_degrees(Sw, Sr, G, n):
    out = np.empty(n, dtype=np.int64)
    for v in range(1, n + 1):
        out[v - 1] = degree(Sw, Sr, G, n, v)
    return out


@njit(cache=True)
def adjacency_matrix(Sw, Sr, G, n):
    m = np.zeros((n, n), dtype=np.bool_)
    for v in range(1, n + 1):
        nb = neighborhood(Sw, Sr, G, n, v)
        for u in nb:
            m[v - 1, u - 1] = True
    return m


class CircleOracle:
    """Circle graph from a canonical ChordDiagram (vertices in left-end order)."""

    cls = ClassTag.CIRCLE

    def __init__(self):
        self.n = 0
        self.degrees = None

    @classmethod
    def build(cls, diagram, explicit_degrees=False):
        if not isinstance(diagram, ChordDiagram):
            raise ValidationError(f"{type(diagram).__name__} given for class circle", rule="class-mismatch")
        validate(diagram, ClassTag.CIRCLE)
        o = cls()
        n = o.n = diagram.n
        bits = np.zeros(2 * n, dtype=np.bool_)
        bits[diagram.ends - 1] = True
        o.S = BitVector(bits)
        ep = np.cumsum(bits)[diagram.ends - 1]
        o.P = PointGrid(np.column_stack([np.arange(1, n + 1), ep]), n)
        if explicit_degrees:
            o.degrees = o.all_degrees()
        return o

    @property
    def _k(self):
        return self.S.words, self.S.sb_ranks, self.P.kernel

    @property
    def N(self):
        """Number of endpoints on the line."""
        return 2 * self.n

    def _check(self, v):
        if not 1 <= v <= self.n:
            raise RangeError(f"vertex {v} outside 1..{self.n}")

    def interval_of(self, v):
        self._check(v)
        s, e, _ = endpoints(*self._k, v)
        return int(s), int(e)

    def rectangles(self, v):
        """The two query rectangles of v as (x1, x2, y1, y2) tuples."""
        self._check(v)
        r = [int(t) for t in rects(*self._k, self.n, v)]
        return tuple(r[:4]), tuple(r[4:])

    def adjacent(self, u, v):
        self._check(u)
        self._check(v)
        return bool(adjacent(*self._k, u, v))

    def degree(self, v):
        self._check(v)
        if self.degrees is not None:
            return int(self.degrees[v - 1])
        return int(degree(*self._k, self.n, v))

    def neighborhood(self, v):
        self._check(v)
        return neighborhood(*self._k, self.n, v)

    def adjacent_many(self, us, vs):
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.size and (min(us.min(), vs.min()) < 1 or max(us.max(), vs.max()) > self.n):
            raise RangeError("vertex out of range")
        return adjacent_many(*self._k, us, vs)

    def all_degrees(self):
        return all_degrees(*self._k, self.n)

    def adjacency_matrix(self):
        return adjacency_matrix(*self._k, self.n)

    def space_report(self):
        rep = {"S": self.S.bits_used(), "P": self.P.bits_used()}
        rep["degrees"] = 0 if self.degrees is None else 64 * int(self.degrees.size)
        rep["header"] = 64
        rep["total"] = sum(rep.values())
        return rep

    def bits_used(self):
        return self.space_report()["total"]

    def arrays(self):
        sections = [self.S.arrays(), self.P.arrays()]
        if self.degrees is not None:
            sections.append([self.degrees])
        return sections

    @classmethod
    def from_arrays(cls, n, sections):
        o = cls()
        o.n = int(n)
        o.S = BitVector.from_arrays(sections[0])
        o.P = PointGrid.from_arrays(sections[1])
        o.degrees = sections[2][0] if len(sections) > 2 else None
        return o

    def __repr__(self):
        return f"CircleOracle(n={self.n})"
