import numpy as np

from ..errors import ValidationError
from . import validate as V
from .types import ClassTag


def _shuffle(rng, items, spread):
    """Uniform shuffle, or a local one moving items about ``spread`` slots."""
    items = np.asarray(items)
    if spread is None:
        return items[rng.permutation(len(items))]
    keys = np.arange(len(items)) + rng.random(len(items)) * float(spread)
    return items[np.argsort(keys, kind="stable")]


def _occurrences(seq, n, per):
    """positions[u-1, j] = 1-based position of the j-th occurrence of u."""
    order = np.argsort(seq, kind="stable")
    return (order + 1).reshape(n, per)


def generate(cls, n, k=None, seed=0, spread=None):
    """Random diagram of the class, deterministic in (cls, n, k, seed, spread).

    ``spread`` switches from uniformly random endpoints to a local shuffle
    where the corners of one polygon lie within roughly ``spread``
    positions of each other, which keeps degrees bounded for large n.
    """
    cls = ClassTag.parse(cls)
    if n < 1:
        raise ValidationError("n must be at least 1", rule="empty")
    rng = np.random.default_rng(seed)
    ids = np.arange(1, n + 1)

    if cls in (ClassTag.CIRCLE, ClassTag.INTERVAL, ClassTag.CIRCULAR_ARC):
        seq = _shuffle(rng, np.repeat(ids, 2), spread)
        occ = _occurrences(seq, n, 2)
        s, e = occ[:, 0], occ[:, 1]
        if cls is ClassTag.CIRCLE:
            return V.canonical_chords(s, e)[0]
        if cls is ClassTag.CIRCULAR_ARC:
            flip = rng.random(n) < 0.5
            s, e = np.where(flip, e, s), np.where(flip, s, e)
        return V.canonical_arcs(s, e, wrap=cls is ClassTag.CIRCULAR_ARC)[0]

    if cls is ClassTag.PERMUTATION:
        return V.canonical_permutation(_shuffle(rng, ids, spread))[0]

    if cls is ClassTag.TRAPEZOID:
        # per trapezoid two top-line slots (0) and two bottom-line slots (1)
        owner = np.repeat(ids, 4)
        line = np.tile([0, 0, 1, 1], n)
        perm = _shuffle(rng, np.arange(4 * n), spread)
        owner, line = owner[perm], line[perm]
        a = np.empty(n, np.int64)
        b = np.empty(n, np.int64)
        c = np.empty(n, np.int64)
        d = np.empty(n, np.int64)
        top = _occurrences(owner[line == 0], n, 2)
        bot = _occurrences(owner[line == 1], n, 2)
        top_pos = np.flatnonzero(line == 0) + 1
        bot_pos = np.flatnonzero(line == 1) + 1
        a[:], b[:] = top_pos[top[:, 0] - 1], top_pos[top[:, 1] - 1]
        c[:], d[:] = bot_pos[bot[:, 0] - 1], bot_pos[bot[:, 1] - 1]
        return V.canonical_trapezoids(a, b, c, d)[0]

    if cls is ClassTag.K_POLYGON:
        k = 3 if k is None else int(k)
        if k < 2:
            raise ValidationError("k must be at least 2", rule="k")
        seq = _shuffle(rng, np.repeat(ids, k), spread)
        return V.canonical_polygon(seq, np.zeros(seq.size, bool), cls)[0]

    if cls is ClassTag.CIRCLE_TRAPEZOID:
        seq = _shuffle(rng, np.repeat(ids, 4), spread)
        occ = _occurrences(seq, n, 4)
        parity = rng.integers(0, 2, n)
        arcs = np.zeros(seq.size, bool)
        for j in range(4):
            arcs[occ[:, j] - 1] = (j % 2) == parity
        return V.canonical_polygon(seq, arcs, cls)[0]

    # generic polygons: 2..k corners, random sides, never two arcs in a row
    k = 5 if k is None else int(k)
    if k < 2:
        raise ValidationError("k must be at least 2", rule="k")
    sizes = rng.integers(2, k + 1, n)
    seq = _shuffle(rng, np.repeat(ids, sizes), spread)
    arcs = np.zeros(seq.size, bool)
    order = np.argsort(seq, kind="stable")
    start = 0
    for d in sizes.tolist():
        flags = rng.random(d) < 0.4
        for j in range(d):
            if flags[j] and flags[(j + 1) % d]:
                flags[(j + 1) % d] = False
        arcs[order[start:start + d]] = flags
        start += d
    return V.canonical_polygon(seq, arcs, cls)[0]
