"""Validation and canonical relabeling of every diagram kind.

Each ``canonical_*`` function checks its input and returns
``(diagram, mapping)`` where ``mapping[old - 1]`` is the new label of the
old vertex ``old``.  ``where`` optionally maps item indexes to input lines so
errors can name the offending line.
"""

import numpy as np

from ..errors import ValidationError
from .types import (
    ArcDiagram,
    ChordDiagram,
    ClassTag,
    PermutationDiagram,
    PolygonDiagram,
    TrapezoidDiagram,
)


def _line(where, idx):
    if where is None or idx is None:
        return None
    return where[idx]


def _check_endpoints(values, total, where, what):
    values = np.asarray(values, dtype=np.int64)
    bad = np.flatnonzero((values < 1) | (values > total))
    if bad.size:
        i = int(bad[0])
        raise ValidationError(f"{what} {values[i]} outside 1..{total}", rule="label-range", line=_line(where, i))
    seen = np.zeros(total + 1, dtype=np.int64) - 1
    for i, v in enumerate(values):
        if seen[v] >= 0:
            raise ValidationError(f"duplicate endpoint {v}", rule="duplicate-endpoint", line=_line(where, i))
        seen[v] = i


def first_occurrence_relabel(labels):
    """Relabel so that label u's first occurrence precedes label u+1's."""
    labels = np.asarray(labels, dtype=np.int64)
    if labels.size == 0:
        return labels, ()
    n = int(labels.max())
    _, first = np.unique(labels, return_index=True)
    old_in_order = labels[np.sort(first)]
    mapping = np.zeros(n + 1, dtype=np.int64)
    mapping[old_in_order] = np.arange(1, len(old_in_order) + 1)
    return mapping[labels], tuple(int(v) for v in mapping[1:])


def canonical_polygon(labels, arcs, cls=ClassTag.GENERIC_POLYGON, n=None, where=None):
    cls = ClassTag.parse(cls)
    labels = np.asarray(labels, dtype=np.int64).ravel()
    arcs = np.asarray(arcs, dtype=np.bool_).ravel()
    if labels.size != arcs.size:
        raise ValidationError("labels and flags differ in length", rule="shape")
    if n is None:
        n = int(labels.max()) if labels.size else 0
    if n < 1:
        raise ValidationError("a diagram needs at least one polygon", rule="empty")
    bad = np.flatnonzero((labels < 1) | (labels > n))
    if bad.size:
        i = int(bad[0])
        raise ValidationError(f"label {labels[i]} outside 1..{n}", rule="label-range", line=_line(where, i))
    counts = np.bincount(labels, minlength=n + 1)
    short = np.flatnonzero(counts[1:] < 2)
    if short.size:
        raise ValidationError(f"polygon {int(short[0]) + 1} has fewer than 2 corners", rule="corner-count")
    order = np.argsort(labels, kind="stable")
    starts = np.concatenate([[0], np.cumsum(counts[1:])])
    for u in range(1, n + 1):
        idx = order[starts[u - 1]:starts[u]]
        flags = arcs[idx]
        if np.any(flags & np.roll(flags, -1)):
            at = int(idx[np.flatnonzero(flags & np.roll(flags, -1))[0]])
            raise ValidationError(f"polygon {u} has two consecutive arc sides", rule="adjacent-arcs", line=_line(where, at))
        if cls is ClassTag.K_POLYGON and flags.any():
            raise ValidationError(f"polygon {u} has an arc side in a k-polygon diagram", rule="k-polygon-chords", line=_line(where, int(idx[0])))
        if cls is ClassTag.CIRCLE_TRAPEZOID:
            if flags.size != 4 or not np.all(flags != np.roll(flags, -1)):
                raise ValidationError(f"polygon {u} is not two arcs joined by two chords", rule="circle-trapezoid-shape", line=_line(where, int(idx[0])))
    if cls is ClassTag.K_POLYGON and len(set(counts[1:].tolist())) != 1:
        raise ValidationError("k-polygon polygons must share one corner count", rule="k-polygon-corners")
    new_labels, mapping = first_occurrence_relabel(labels)
    return PolygonDiagram(new_labels, arcs), mapping


def canonical_chords(starts, ends, where=None):
    s = np.asarray(starts, dtype=np.int64).ravel()
    e = np.asarray(ends, dtype=np.int64).ravel()
    n = s.size
    if n < 1:
        raise ValidationError("a diagram needs at least one chord", rule="empty")
    wrong = np.flatnonzero(s >= e)
    if wrong.size:
        i = int(wrong[0])
        raise ValidationError(f"chord ({s[i]}, {e[i]}) needs s < e", rule="chord-order", line=_line(where, i))
    _check_endpoints(np.concatenate([s, e]), 2 * n, None if where is None else list(where) * 2, "endpoint")
    order = np.argsort(s, kind="stable")
    mapping = np.empty(n, dtype=np.int64)
    mapping[order] = np.arange(1, n + 1)
    return ChordDiagram(s[order], e[order]), tuple(int(v) for v in mapping)


def canonical_permutation(perm, where=None):
    p = np.asarray(perm, dtype=np.int64).ravel()
    n = p.size
    if n < 1:
        raise ValidationError("a permutation needs at least one element", rule="empty")
    if sorted(p.tolist()) != list(range(1, n + 1)):
        raise ValidationError(f"values are not a permutation of 1..{n}", rule="permutation", line=_line(where, 0))
    return PermutationDiagram(p), tuple(range(1, n + 1))


def canonical_arcs(starts, ends, wrap=False, where=None):
    s = np.asarray(starts, dtype=np.int64).ravel()
    e = np.asarray(ends, dtype=np.int64).ravel()
    n = s.size
    if n < 1:
        raise ValidationError("a diagram needs at least one arc", rule="empty")
    if not wrap:
        wrong = np.flatnonzero(s >= e)
        if wrong.size:
            i = int(wrong[0])
            raise ValidationError(f"interval ({s[i]}, {e[i]}) needs s < e", rule="interval-order", line=_line(where, i))
    _check_endpoints(np.concatenate([s, e]), 2 * n, None if where is None else list(where) * 2, "endpoint")
    order = np.argsort(np.minimum(s, e), kind="stable")
    mapping = np.empty(n, dtype=np.int64)
    mapping[order] = np.arange(1, n + 1)
    return ArcDiagram(s[order], e[order]), tuple(int(v) for v in mapping)


def canonical_trapezoids(a, b, c, d, where=None):
    a, b, c, d = (np.asarray(v, dtype=np.int64).ravel() for v in (a, b, c, d))
    n = a.size
    if n < 1:
        raise ValidationError("a diagram needs at least one trapezoid", rule="empty")
    for lo, hi, name in ((a, b, "a < b"), (c, d, "c < d")):
        wrong = np.flatnonzero(lo >= hi)
        if wrong.size:
            raise ValidationError(f"trapezoid needs {name}", rule="trapezoid-order", line=_line(where, int(wrong[0])))
    _check_endpoints(np.concatenate([a, b, c, d]), 4 * n, None if where is None else list(where) * 4, "coordinate")
    order = np.argsort(a, kind="stable")
    mapping = np.empty(n, dtype=np.int64)
    mapping[order] = np.arange(1, n + 1)
    return TrapezoidDiagram(a[order], b[order], c[order], d[order]), tuple(int(v) for v in mapping)


def validate(diagram, cls):
    """Re-run validation on an in-memory diagram; returns it when canonical."""
    cls = ClassTag.parse(cls)
    if isinstance(diagram, PolygonDiagram):
        if cls not in (ClassTag.K_POLYGON, ClassTag.CIRCLE_TRAPEZOID, ClassTag.GENERIC_POLYGON):
            raise ValidationError(f"polygon diagram given for class {cls.value}", rule="class-mismatch")
        canon, _ = canonical_polygon(diagram.labels, diagram.arcs, cls)
    elif isinstance(diagram, ChordDiagram) and cls is ClassTag.CIRCLE:
        canon, _ = canonical_chords(diagram.starts, diagram.ends)
    elif isinstance(diagram, PermutationDiagram) and cls is ClassTag.PERMUTATION:
        canon, _ = canonical_permutation(diagram.perm)
    elif isinstance(diagram, ArcDiagram) and cls in (ClassTag.INTERVAL, ClassTag.CIRCULAR_ARC):
        canon, _ = canonical_arcs(diagram.starts, diagram.ends, wrap=cls is ClassTag.CIRCULAR_ARC)
    elif isinstance(diagram, TrapezoidDiagram) and cls is ClassTag.TRAPEZOID:
        canon, _ = canonical_trapezoids(diagram.a, diagram.b, diagram.c, diagram.d)
    else:
        raise ValidationError(f"{type(diagram).__name__} does not match class {cls.value}", rule="class-mismatch")
    if canon != diagram:
        raise ValidationError("diagram is not canonically labeled", rule="canonical")
    return diagram
