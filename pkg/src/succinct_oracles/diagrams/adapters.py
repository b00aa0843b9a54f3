"""Embeddings of every class into generalized polygons on a circle."""

import numpy as np

from ..errors import ValidationError
from .types import (
    ArcDiagram,
    ChordDiagram,
    ClassTag,
    PermutationDiagram,
    PolygonDiagram,
    TrapezoidDiagram,
    POLYGON_CLASSES,
)
from .validate import canonical_polygon, first_occurrence_relabel


def _from_pairs(first, second, first_is_arc, n):
    labels = np.zeros(2 * n, dtype=np.int64)
    arcs = np.zeros(2 * n, dtype=np.bool_)
    ids = np.arange(1, n + 1)
    labels[first - 1] = ids
    labels[second - 1] = ids
    arcs[first - 1] = first_is_arc
    return labels, arcs


def permutation_chords(diagram):
    """Segment i -> pi(i) as the chord {i, 2n + 1 - pi(i)}."""
    n = diagram.n
    return ChordDiagram(np.arange(1, n + 1), 2 * n + 1 - diagram.perm)


def trapezoid_corners(diagram):
    """Circle positions (a, b, d, c order) of every trapezoid's corners.

    The top line runs left to right over positions 1..2n, the bottom line
    right to left over 2n+1..4n.
    """
    n = diagram.n
    top = np.concatenate([diagram.a, diagram.b])
    bot = np.concatenate([diagram.c, diagram.d])
    top_rank = np.empty(2 * n, np.int64)
    top_rank[np.argsort(top)] = np.arange(1, 2 * n + 1)
    bot_rank = np.empty(2 * n, np.int64)
    bot_rank[np.argsort(-bot)] = np.arange(2 * n + 1, 4 * n + 1)
    return top_rank[:n], top_rank[n:], bot_rank[n:], bot_rank[:n]


def to_polygon_diagram(diagram, cls):
    cls = ClassTag.parse(cls)
    if cls in POLYGON_CLASSES:
        if not isinstance(diagram, PolygonDiagram):
            raise ValidationError(f"{type(diagram).__name__} given for class {cls.value}", rule="class-mismatch")
        return diagram
    if cls is ClassTag.PERMUTATION:
        if not isinstance(diagram, PermutationDiagram):
            raise ValidationError(f"{type(diagram).__name__} given for class {cls.value}", rule="class-mismatch")
        diagram = permutation_chords(diagram)
        cls = ClassTag.CIRCLE
    if cls is ClassTag.CIRCLE:
        if not isinstance(diagram, ChordDiagram):
            raise ValidationError(f"{type(diagram).__name__} given for class circle", rule="class-mismatch")
        labels, arcs = _from_pairs(diagram.starts, diagram.ends, False, diagram.n)
        return PolygonDiagram(labels, arcs)
    if cls in (ClassTag.INTERVAL, ClassTag.CIRCULAR_ARC):
        if not isinstance(diagram, ArcDiagram):
            raise ValidationError(f"{type(diagram).__name__} given for class {cls.value}", rule="class-mismatch")
        # the arc starts at s; the closing chord starts at e
        labels, arcs = _from_pairs(diagram.starts, diagram.ends, True, diagram.n)
        labels, _ = first_occurrence_relabel(labels)
        return PolygonDiagram(labels, arcs)
    if cls is ClassTag.TRAPEZOID:
        if not isinstance(diagram, TrapezoidDiagram):
            raise ValidationError(f"{type(diagram).__name__} given for class trapezoid", rule="class-mismatch")
        n = diagram.n
        pa, pb, pd, pc = trapezoid_corners(diagram)
        labels = np.zeros(4 * n, np.int64)
        arcs = np.zeros(4 * n, np.bool_)
        ids = np.arange(1, n + 1)
        for pos in (pa, pb, pd, pc):
            labels[pos - 1] = ids
        # top edge a->b and bottom edge d->c are arcs, legs are chords
        arcs[pa - 1] = True
        arcs[pd - 1] = True
        return canonical_polygon(labels, arcs, ClassTag.CIRCLE_TRAPEZOID)[0]
    raise ValidationError(f"no polygon embedding for class {cls.value}", rule="class")
