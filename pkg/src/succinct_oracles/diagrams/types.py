from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..errors import ValidationError


class ClassTag(str, Enum):
    CIRCLE = "circle"
    PERMUTATION = "permutation"
    INTERVAL = "interval"
    CIRCULAR_ARC = "circular-arc"
    K_POLYGON = "k-polygon"
    CIRCLE_TRAPEZOID = "circle-trapezoid"
    TRAPEZOID = "trapezoid"
    GENERIC_POLYGON = "generic-polygon"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "-")
        aliases = {"circulararc": "circular-arc", "polygon": "generic-polygon", "kpolygon": "k-polygon"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValidationError(f"unknown graph class {name!r}", rule="class") from None

    @property
    def code(self):
        return list(ClassTag).index(self)

    @classmethod
    def from_code(cls, code):
        return list(cls)[code]


POLYGON_CLASSES = (ClassTag.K_POLYGON, ClassTag.CIRCLE_TRAPEZOID, ClassTag.GENERIC_POLYGON)
ARC_CLASSES = (ClassTag.INTERVAL, ClassTag.CIRCULAR_ARC)


def _freeze(arr, dtype):
    a = np.array(arr, dtype=dtype).ravel()
    a.setflags(write=False)
    return a


class _ArrayEq:
    _fields = ()

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return all(np.array_equal(getattr(self, f), getattr(other, f)) for f in self._fields)

    def __hash__(self):
        return hash(tuple(getattr(self, f).tobytes() for f in self._fields))


@dataclass(frozen=True, eq=False)
class PolygonDiagram(_ArrayEq):
    """Corner-string of generalized polygons read clockwise.

    ``labels[i]`` is the polygon owning corner i+1; ``arcs[i]`` says whether
    the side *starting* at that corner (running to the polygon's next
    corner, wrapping after its last one) is a circle arc.
    """

    labels: np.ndarray
    arcs: np.ndarray
    _fields = ("labels", "arcs")

    def __post_init__(self):
        object.__setattr__(self, "labels", _freeze(self.labels, np.int64))
        object.__setattr__(self, "arcs", _freeze(self.arcs, np.bool_))

    @property
    def N(self):
        return int(self.labels.size)

    @property
    def n(self):
        return int(self.labels.max()) if self.labels.size else 0

    @property
    def corner_counts(self):
        """d_u for u = 1..n (index 0 unused)."""
        return np.bincount(self.labels, minlength=self.n + 1)

    @property
    def k(self):
        return int(self.corner_counts.max()) if self.N else 0

    def corners(self, u):
        """1-based positions of u's corners, ascending."""
        return np.flatnonzero(self.labels == u) + 1

    def __repr__(self):
        return f"PolygonDiagram(n={self.n}, N={self.N})"


@dataclass(frozen=True, eq=False)
class ChordDiagram(_ArrayEq):
    """Chords (starts[i], ends[i]) of vertex i+1 on points 1..2n."""

    starts: np.ndarray
    ends: np.ndarray
    _fields = ("starts", "ends")

    def __post_init__(self):
        object.__setattr__(self, "starts", _freeze(self.starts, np.int64))
        object.__setattr__(self, "ends", _freeze(self.ends, np.int64))

    @property
    def n(self):
        return int(self.starts.size)


@dataclass(frozen=True, eq=False)
class PermutationDiagram(_ArrayEq):
    """Segment i joins top position i to bottom position perm[i-1]."""

    perm: np.ndarray
    _fields = ("perm",)

    def __post_init__(self):
        object.__setattr__(self, "perm", _freeze(self.perm, np.int64))

    @property
    def n(self):
        return int(self.perm.size)


@dataclass(frozen=True, eq=False)
class ArcDiagram(_ArrayEq):
    """Arcs running clockwise from starts[i] to ends[i] on points 1..2n.

    For the interval class starts < ends always; circular arcs may wrap.
    """

    starts: np.ndarray
    ends: np.ndarray
    _fields = ("starts", "ends")

    def __post_init__(self):
        object.__setattr__(self, "starts", _freeze(self.starts, np.int64))
        object.__setattr__(self, "ends", _freeze(self.ends, np.int64))

    @property
    def n(self):
        return int(self.starts.size)


@dataclass(frozen=True, eq=False)
class TrapezoidDiagram(_ArrayEq):
    """Trapezoid i has a[i] < b[i] on the top line, c[i] < d[i] on the bottom.

    Coordinates are ranks in the merged left-to-right order of all 4n
    corners (their projections onto a common parallel line).
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    _fields = ("a", "b", "c", "d")

    def __post_init__(self):
        for f in self._fields:
            object.__setattr__(self, f, _freeze(getattr(self, f), np.int64))

    @property
    def n(self):
        return int(self.a.size)


DIAGRAM_TYPES = {
    ClassTag.CIRCLE: ChordDiagram,
    ClassTag.PERMUTATION: PermutationDiagram,
    ClassTag.INTERVAL: ArcDiagram,
    ClassTag.CIRCULAR_ARC: ArcDiagram,
    ClassTag.K_POLYGON: PolygonDiagram,
    ClassTag.CIRCLE_TRAPEZOID: PolygonDiagram,
    ClassTag.GENERIC_POLYGON: PolygonDiagram,
    ClassTag.TRAPEZOID: TrapezoidDiagram,
}
