"""Plain-text diagram formats (whitespace separated, 1-based).

    polygon n N        then N tokens label/flag with flag a (arc) or c (chord)
    circle n           then n lines "s e"
    permutation n      then n integers pi(1..n)
    interval n         then n lines "s e"
    circulararc n      then n lines "s e" (clockwise s -> e, may wrap)
    trapezoid n        then n lines "a b c d" (merged coordinates)

Lines starting with '#' are ignored.
"""

from ..errors import ValidationError
from .types import (
    ArcDiagram,
    ChordDiagram,
    ClassTag,
    PermutationDiagram,
    PolygonDiagram,
    TrapezoidDiagram,
)
from . import validate as V

HEADERS = {
    ClassTag.CIRCLE: "circle",
    ClassTag.PERMUTATION: "permutation",
    ClassTag.INTERVAL: "interval",
    ClassTag.CIRCULAR_ARC: "circulararc",
    ClassTag.K_POLYGON: "polygon",
    ClassTag.CIRCLE_TRAPEZOID: "polygon",
    ClassTag.GENERIC_POLYGON: "polygon",
    ClassTag.TRAPEZOID: "trapezoid",
}


def _tokens(text):
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        out.extend((tok, lineno) for tok in line.split())
    return out


def _int(tok, line, what="integer"):
    try:
        return int(tok)
    except ValueError:
        raise ValidationError(f"malformed {what} {tok!r}", rule="token", line=line) from None


def _rows(toks, n, width, line):
    if len(toks) != n * width:
        raise ValidationError(f"expected {n} rows of {width} integers, got {len(toks)} values", rule="count", line=line)
    vals = [_int(t, ln) for t, ln in toks]
    rows = [vals[i * width:(i + 1) * width] for i in range(n)]
    where = [toks[i * width][1] for i in range(n)]
    return list(zip(*rows)), where


def parse_diagram(text, cls):
    """Parse and validate; returns ``(diagram, mapping)`` (see validate)."""
    cls = ClassTag.parse(cls)
    toks = _tokens(text)
    if not toks:
        raise ValidationError("empty input", rule="header", line=1)
    head, hline = toks[0]
    if head.lower() != HEADERS[cls]:
        raise ValidationError(f"header {head!r} does not match class {cls.value}", rule="class-mismatch", line=hline)
    if cls in (ClassTag.K_POLYGON, ClassTag.CIRCLE_TRAPEZOID, ClassTag.GENERIC_POLYGON):
        if len(toks) < 3:
            raise ValidationError("polygon header needs n and N", rule="header", line=hline)
        n = _int(toks[1][0], hline)
        total = _int(toks[2][0], hline)
        body = toks[3:]
        if len(body) != total:
            raise ValidationError(f"expected {total} corners, got {len(body)}", rule="count", line=hline)
        labels, arcs, where = [], [], []
        for tok, ln in body:
            lab, sep, flag = tok.partition("/")
            if not sep or flag not in ("a", "c"):
                raise ValidationError(f"malformed corner {tok!r}", rule="token", line=ln)
            labels.append(_int(lab, ln, "label"))
            arcs.append(flag == "a")
            where.append(ln)
        return V.canonical_polygon(labels, arcs, cls, n=n, where=where)
    if len(toks) < 2:
        raise ValidationError("header needs n", rule="header", line=hline)
    n = _int(toks[1][0], hline)
    if n < 1:
        raise ValidationError("n must be at least 1", rule="empty", line=hline)
    body = toks[2:]
    if cls is ClassTag.PERMUTATION:
        (perm,), where = _rows(body, n, 1, hline)
        return V.canonical_permutation(perm, where=where)
    if cls is ClassTag.TRAPEZOID:
        (a, b, c, d), where = _rows(body, n, 4, hline)
        return V.canonical_trapezoids(a, b, c, d, where=where)
    (s, e), where = _rows(body, n, 2, hline)
    if cls is ClassTag.CIRCLE:
        return V.canonical_chords(s, e, where=where)
    return V.canonical_arcs(s, e, wrap=cls is ClassTag.CIRCULAR_ARC, where=where)


def render(diagram, cls=None):
    """Canonical text for a diagram; ``parse_diagram(render(d), cls)[0] == d``."""
    if isinstance(diagram, PolygonDiagram):
        corners = " ".join(f"{u}/{'a' if f else 'c'}" for u, f in zip(diagram.labels.tolist(), diagram.arcs.tolist()))
        return f"polygon {diagram.n} {diagram.N}\n{corners}\n"
    if isinstance(diagram, ChordDiagram):
        rows = "".join(f"{s} {e}\n" for s, e in zip(diagram.starts.tolist(), diagram.ends.tolist()))
        return f"circle {diagram.n}\n{rows}"
    if isinstance(diagram, PermutationDiagram):
        return f"permutation {diagram.n}\n{' '.join(map(str, diagram.perm.tolist()))}\n"
    if isinstance(diagram, ArcDiagram):
        cls = ClassTag.parse(cls) if cls is not None else ClassTag.INTERVAL
        head = HEADERS[cls] if cls in (ClassTag.INTERVAL, ClassTag.CIRCULAR_ARC) else "interval"
        if head == "interval" and bool((diagram.starts > diagram.ends).any()):
            head = "circulararc"
        rows = "".join(f"{s} {e}\n" for s, e in zip(diagram.starts.tolist(), diagram.ends.tolist()))
        return f"{head} {diagram.n}\n{rows}"
    if isinstance(diagram, TrapezoidDiagram):
        rows = "".join(
            f"{a} {b} {c} {d}\n"
            for a, b, c, d in zip(diagram.a.tolist(), diagram.b.tolist(), diagram.c.tolist(), diagram.d.tolist())
        )
        return f"trapezoid {diagram.n}\n{rows}"
    raise TypeError(f"cannot render {type(diagram).__name__}")
