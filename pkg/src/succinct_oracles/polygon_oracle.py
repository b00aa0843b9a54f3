"""Succinct adjacency oracle for intersection graphs of polygons on a circle.

The corner string S (label of the polygon owning each of the N circle
positions) is never stored.  It is split into a bitvector F marking first
occurrences and a wavelet matrix over the remaining labels, which works
because labels are numbered in first-occurrence order.  Five further
arrays describe, per position, where the side starting or ending there goes:

    N    next corner of the same polygon (inf after the last one)
    N_a  same, but only for arcs (0 otherwise)
    N_c  same, but only for non-wrapping chords (0 otherwise)
    P_a  start of the arc ending here (0 for a wrapping arc, inf if none)
    P_c  start of the non-wrapping chord ending here (inf if none)

They are virtual too: every entry is recomputed from S with a few
rank/select calls, and only range-argmax/argmin indexes over them are kept.
Infinity is encoded as N + 1.
"""

import threading

import numpy as np

from . import _polygon_kernels as PK
from .diagrams import ClassTag, PolygonDiagram, to_polygon_diagram, validate
from .diagrams.types import ARC_CLASSES, POLYGON_CLASSES
from .errors import NotFoundError, RangeError, ValidationError
from .primitives import BitVector, LabelSequence, RangeArgIndex

VIRTUAL = {"N": PK.V_N, "N_a": PK.V_NA, "P_a": PK.V_PA, "N_c": PK.V_NC, "P_c": PK.V_PC}
INDEX_NAMES = ("idxN", "idxNa", "idxNc", "idxPa", "idxPc")


class PolygonOracle:
    """Adjacency, degree and neighbourhood queries on a polygon-circle graph.

    Build with :meth:`build`.  ``wrap_scan`` controls the extra pass that
    looks for wrap sides of other polygons directly (see neighborhood).
    """

    def __init__(self):
        self.n = 0
        self.N = 0
        self.k = 0
        self.cls = ClassTag.GENERIC_POLYGON
        self.forced = False
        self.wrap_scan = True
        self.degrees = None
        self._scratch = threading.local()

    @classmethod
    def build(cls, diagram, explicit_degrees=False, impl_class=None, wrap_scan=True):
        if impl_class is None:
            impl_class = ClassTag.GENERIC_POLYGON if isinstance(diagram, PolygonDiagram) else None
            if impl_class is None:
                raise ValidationError("impl_class is required for non-polygon diagrams", rule="class")
        impl_class = ClassTag.parse(impl_class)
        validate(diagram, impl_class)
        d = to_polygon_diagram(diagram, impl_class)
        o = cls()
        o.cls = impl_class
        o.forced = impl_class in ARC_CLASSES
        o.wrap_scan = bool(wrap_scan)
        o.n = d.n
        o.N = d.N
        o.k = d.k
        labels = d.labels
        first = np.zeros(o.N, dtype=bool)
        _, idx = np.unique(labels, return_index=True)
        first[idx] = True
        o.F = BitVector(first)
        o.Sp = LabelSequence(labels[~first] - 1, sigma=max(o.n, 1))
        o.A = BitVector(d.arcs)
        vals = PK.virt_all(o._F, o._Sp, o._A, o.n, o.N, o.forced)
        o.idxN = RangeArgIndex(vals[PK.V_N], "max")
        o.idxNa = RangeArgIndex(vals[PK.V_NA], "max")
        o.idxNc = RangeArgIndex(vals[PK.V_NC], "max")
        o.idxPa = RangeArgIndex(vals[PK.V_PA], "min")
        o.idxPc = RangeArgIndex(vals[PK.V_PC], "min")
        if explicit_degrees:
            o.degrees = PK.all_degrees(o._F, o._Sp, o._A, o.n, o.N, o.forced, o._R, o.scratch(), o.wrap_scan)
        return o

    @property
    def _F(self):
        return self.F.kernel

    @property
    def _Sp(self):
        return self.Sp.kernel

    @property
    def _A(self):
        return self.A.kernel

    @property
    def _R(self):
        return (self.idxN.kernel, self.idxNa.kernel, self.idxPa.kernel, self.idxNc.kernel, self.idxPc.kernel)

    def scratch(self):
        """The calling thread's mark array D (length n + 1)."""
        D = getattr(self._scratch, "D", None)
        if D is None or D.shape[0] != self.n + 1:
            D = np.zeros(self.n + 1, dtype=np.uint8)
            self._scratch.D = D
        return D

    def _check_vertex(self, u):
        if not 1 <= u <= self.n:
            raise RangeError(f"vertex {u} outside 1..{self.n}")

    def _check_pos(self, i, lo=1):
        if not lo <= i <= self.N:
            raise RangeError(f"position {i} outside {lo}..{self.N}")

    # corner string

    def s_access(self, i):
        self._check_pos(i)
        return int(PK.s_access(self._F, self._Sp, i))

    def s_rank(self, alpha, i):
        self._check_vertex(alpha)
        self._check_pos(i, lo=0)
        if i == 0:
            return 0
        return int(PK.s_rank(self._F, self._Sp, alpha, i))

    def s_select(self, alpha, j):
        self._check_vertex(alpha)
        if j < 1:
            raise RangeError(f"occurrence {j} must be positive")
        if j > self.side_count(alpha):
            raise NotFoundError(f"label {alpha} has fewer than {j} corners")
        return int(PK.s_select(self._F, self._Sp, alpha, j))

    def side_count(self, u):
        self._check_vertex(u)
        return int(PK.corner_count(self._F, self._Sp, self.N, self.n, u))

    def corners(self, u):
        self._check_vertex(u)
        return PK.corners(self._F, self._Sp, self.N, self.n, u)

    def interval(self, u, i):
        """Span of the i-th side of u as (start, end); start > end wraps."""
        d = self.side_count(u)
        if not 1 <= i <= d:
            raise RangeError(f"side {i} outside 1..{d}")
        s = self.s_select(u, i)
        e = self.s_select(u, i + 1) if i < d else self.s_select(u, 1)
        return s, e

    def is_arc(self, i):
        self._check_pos(i)
        return bool(self.A.access(i))

    def virt(self, which, i):
        if which not in VIRTUAL:
            raise ValidationError(f"unknown virtual array {which!r}", rule="virtual")
        self._check_pos(i)
        return int(PK.virt(self._F, self._Sp, self._A, self.n, self.N, self.forced, VIRTUAL[which], i))

    # queries

    def adjacent(self, u, v):
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(PK.adjacent(self._F, self._Sp, self._A, self.n, self.N, u, v))

    def neighborhood(self, u):
        self._check_vertex(u)
        D = self.scratch()
        return PK.neighborhood(self._F, self._Sp, self._A, self.n, self.N, self.forced, self._R, u, D, self.wrap_scan)

    def degree(self, u):
        self._check_vertex(u)
        if self.degrees is not None:
            return int(self.degrees[u - 1])
        return int(PK.count_neighbors(self._F, self._Sp, self._A, self.n, self.N, self.forced, self._R, u,
                                      self.scratch(), self.wrap_scan))

    def adjacent_many(self, us, vs):
        us = np.asarray(us, dtype=np.int64)
        vs = np.asarray(vs, dtype=np.int64)
        if us.size and (min(us.min(), vs.min()) < 1 or max(us.max(), vs.max()) > self.n):
            raise RangeError("vertex out of range")
        return PK.adjacent_many(self._F, self._Sp, self._A, self.n, self.N, us, vs)

    def adjacency_matrix(self):
        return PK.adjacency_matrix(self._F, self._Sp, self._A, self.n, self.N)

    def all_degrees(self):
        return PK.all_degrees(self._F, self._Sp, self._A, self.n, self.N, self.forced, self._R, self.scratch(), self.wrap_scan)

    # space

    def space_report(self):
        rep = {
            "F": self.F.bits_used(),
            "Sp": self.Sp.bits_used(),
            "A": self.A.bits_used(),
        }
        for name in INDEX_NAMES:
            rep[name] = getattr(self, name).bits_used()
        rep["degrees"] = 0 if self.degrees is None else 64 * int(self.degrees.size)
        rep["header"] = 4 * 64
        rep["total"] = sum(rep.values())
        return rep

    def bits_used(self):
        return self.space_report()["total"]

    def arrays(self):
        sections = [self.F.arrays(), self.Sp.arrays(), self.A.arrays()]
        sections += [getattr(self, name).arrays() for name in INDEX_NAMES]
        if self.degrees is not None:
            sections.append([self.degrees])
        return sections

    @classmethod
    def from_arrays(cls, n, N, impl_class, sections, wrap_scan=True):
        o = cls()
        o.n, o.N = int(n), int(N)
        o.cls = ClassTag.parse(impl_class)
        o.forced = o.cls in ARC_CLASSES
        o.wrap_scan = wrap_scan
        o.F = BitVector.from_arrays(sections[0])
        o.Sp = LabelSequence.from_arrays(sections[1])
        o.A = BitVector.from_arrays(sections[2])
        for name, arrs in zip(INDEX_NAMES, sections[3:8]):
            setattr(o, name, RangeArgIndex.from_arrays(arrs))
        o.degrees = sections[8][0] if len(sections) > 8 else None
        if o.n:
            counts = np.bincount(np.concatenate([np.arange(1, o.n + 1), o.Sp.to_numpy() + 1]), minlength=o.n + 1)
            o.k = int(counts.max())
        return o

    def __repr__(self):
        return f"PolygonOracle(n={self.n}, N={self.N}, class={self.cls.value})"


POLYGON_IMPL_CLASSES = tuple(POLYGON_CLASSES) + (
    ClassTag.CIRCLE,
    ClassTag.PERMUTATION,
    ClassTag.INTERVAL,
    ClassTag.CIRCULAR_ARC,
    ClassTag.TRAPEZOID,
)
