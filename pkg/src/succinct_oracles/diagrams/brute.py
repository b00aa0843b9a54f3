"""Brute-force geometric ground truth.

Everything here works straight from corner positions and side kinds; none
of it touches the succinct structures.
"""

import numpy as np

from ..errors import RangeError
from .adapters import to_polygon_diagram
from .types import (
    ArcDiagram,
    ChordDiagram,
    ClassTag,
    PermutationDiagram,
    PolygonDiagram,
    TrapezoidDiagram,
)

ARC = "arc"
CHORD = "chord"


def _inside(x, span):
    s, t = span
    if s < t:
        return s < x < t
    return x > s or x < t


def _inside_closed(x, span):
    return x in span or _inside(x, span)


def sides_intersect(e_kind, e_span, f_kind, f_span):
    """Do two sides meet?  Spans run clockwise from span[0] to span[1] and
    wrap when span[0] > span[1]."""
    if e_kind == CHORD and f_kind == CHORD:
        if set(e_span) & set(f_span):
            return False
        return _inside(f_span[0], e_span) != _inside(f_span[1], e_span)
    if e_kind == ARC and f_kind == CHORD:
        return _inside(f_span[0], e_span) or _inside(f_span[1], e_span)
    if e_kind == CHORD and f_kind == ARC:
        return _inside(e_span[0], f_span) or _inside(e_span[1], f_span)
    return (
        _inside_closed(f_span[0], e_span)
        or _inside_closed(f_span[1], e_span)
        or _inside_closed(e_span[0], f_span)
        or _inside_closed(e_span[1], f_span)
    )


def polygon_sides(diagram, u):
    """Sides of polygon u as (kind, (start, end)) in corner order.

    The wrap side of a two-corner all-chord polygon repeats its only chord
    and is left out.
    """
    pos = diagram.corners(u).tolist()
    d = len(pos)
    sides = []
    for i in range(d):
        s, t = pos[i], pos[(i + 1) % d]
        kind = ARC if diagram.arcs[s - 1] else CHORD
        sides.append((kind, (s, t)))
    if d == 2 and sides[0][0] == CHORD and sides[1][0] == CHORD:
        sides.pop()
    return sides


def _as_polygon(diagram, cls=None):
    if isinstance(diagram, PolygonDiagram):
        return diagram
    return to_polygon_diagram(diagram, cls)


def naive_adjacent(diagram, u, v, cls=None):
    d = _as_polygon(diagram, cls)
    for w in (u, v):
        if not 1 <= w <= d.n:
            raise RangeError(f"vertex {w} outside 1..{d.n}")
    if u == v:
        return False
    return any(
        sides_intersect(ek, es, fk, fs)
        for ek, es in polygon_sides(d, u)
        for fk, fs in polygon_sides(d, v)
    )


def naive_neighborhood(diagram, u, cls=None):
    d = _as_polygon(diagram, cls)
    if not 1 <= u <= d.n:
        raise RangeError(f"vertex {u} outside 1..{d.n}")
    return [v for v in range(1, d.n + 1) if v != u and naive_adjacent(d, u, v)]


def naive_degree(diagram, u, cls=None):
    return len(naive_neighborhood(diagram, u, cls))


def naive_matrix(diagram, cls=None):
    """Boolean adjacency matrix (index 0 = vertex 1), all side pairs at once."""
    d = _as_polygon(diagram, cls)
    n, N = d.n, d.N
    order = np.argsort(d.labels, kind="stable")
    counts = d.corner_counts[1:]
    starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
    # side j of the sorted corner list runs to the next corner of its owner
    nxt = np.arange(N) + 1
    last = starts + counts - 1
    nxt[last] = starts
    s = order + 1
    t = order[nxt] + 1
    owner = d.labels[order]
    kind_arc = d.arcs[order]
    keep = np.ones(N, bool)
    twochord = (counts == 2) & ~d.arcs[order[starts]] & ~d.arcs[order[last]]
    keep[last[twochord]] = False
    s, t, owner, kind_arc = s[keep], t[keep], owner[keep], kind_arc[keep]

    def inside(x, a, b):
        return np.where(a < b, (a < x) & (x < b), (x > a) | (x < b))

    S, T = s[:, None], t[:, None]
    fs, ft = s[None, :], t[None, :]
    fs_in_e = inside(fs, S, T)
    ft_in_e = inside(ft, S, T)
    es_in_f = inside(S, fs, ft)
    et_in_f = inside(T, fs, ft)
    ea, fa = kind_arc[:, None], kind_arc[None, :]
    chord_chord = fs_in_e ^ ft_in_e
    hit = np.where(
        ea & fa,
        fs_in_e | ft_in_e | es_in_f | et_in_f | ((S == fs) & (T == ft)),
        np.where(ea, fs_in_e | ft_in_e, np.where(fa, es_in_f | et_in_f, chord_chord)),
    )
    first = np.flatnonzero(np.concatenate([[True], owner[1:] != owner[:-1]]))
    m = np.logical_or.reduceat(np.logical_or.reduceat(hit, first, axis=0), first, axis=1)
    np.fill_diagonal(m, False)
    return m


def native_matrix(diagram, cls):
    """Adjacency from each class's own geometry, without the polygon embedding."""
    cls = ClassTag.parse(cls)
    if cls is ClassTag.CIRCLE:
        assert isinstance(diagram, ChordDiagram)
        s, e = diagram.starts, diagram.ends
        S, E = s[:, None], e[:, None]
        m = ((S < s) & (s < E) & (E < e)) | ((s < S) & (S < e) & (e < E))
    elif cls is ClassTag.PERMUTATION:
        assert isinstance(diagram, PermutationDiagram)
        i = np.arange(diagram.n)
        p = diagram.perm
        m = (i[:, None] - i[None, :]) * (p[:, None] - p[None, :]) < 0
    elif cls is ClassTag.INTERVAL:
        assert isinstance(diagram, ArcDiagram)
        s, e = diagram.starts, diagram.ends
        m = (s[:, None] <= e[None, :]) & (s[None, :] <= e[:, None])
    elif cls is ClassTag.CIRCULAR_ARC:
        assert isinstance(diagram, ArcDiagram)
        n2 = 2 * diagram.n
        cover = np.zeros((diagram.n, n2 + 1), bool)
        for i, (s, e) in enumerate(zip(diagram.starts.tolist(), diagram.ends.tolist())):
            if s < e:
                cover[i, s:e + 1] = True
            else:
                cover[i, s:] = True
                cover[i, 1:e + 1] = True
        c = cover.astype(np.int64)
        m = (c @ c.T) > 0
    elif cls is ClassTag.TRAPEZOID:
        assert isinstance(diagram, TrapezoidDiagram)
        a, b, c, d = diagram.a, diagram.b, diagram.c, diagram.d
        left = (b[:, None] < a[None, :]) & (d[:, None] < c[None, :])
        m = ~(left | left.T)
    else:
        return naive_matrix(diagram, cls)
    m = np.array(m, dtype=bool)
    np.fill_diagonal(m, False)
    return m
