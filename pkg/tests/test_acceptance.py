"""Acceptance criteria, one test each.

A summary line per criterion is printed at the end of the session by the
terminal-summary hook in conftest.py.
"""

import io
import math
import time

import numpy as np
import pytest
from conftest import D1_TEXT

from succinct_oracles.circle_oracle import CircleOracle
from succinct_oracles.cli import build_oracle, main
from succinct_oracles.diagrams import generate, naive_matrix
from succinct_oracles.grid2d import PointGrid
from succinct_oracles.polygon_oracle import PolygonOracle
from succinct_oracles.primitives import BitVector, LabelSequence, RangeArgIndex
from succinct_oracles.trapezoid_oracle import TrapezoidOracle

CORPUS_CLASSES = [
    ("circle", None), ("k-polygon", 3), ("k-polygon", 4), ("k-polygon", 5), ("circle-trapezoid", None),
    ("circular-arc", None), ("interval", None), ("permutation", None), ("trapezoid", None),
]
SMALL, LARGE, LARGE_N = 200, 20, 500


def corpus(cls, k):
    for i in range(SMALL):
        yield generate(cls, 1 + i % 50, k=k, seed=i)
    for i in range(LARGE):
        yield generate(cls, LARGE_N, k=k, seed=10_000 + i)


# criterion 1


def _bits_check(bits, qs=None):
    b = BitVector(bits)
    n = len(bits)
    pre = np.concatenate([[0], np.cumsum(bits)])
    pos = np.arange(n + 1) if qs is None else qs
    bad = int((b.rank_many(1, pos) != pre[pos]).sum() + (b.rank_many(0, pos) != pos - pre[pos]).sum())
    for c, where in ((1, np.flatnonzero(bits) + 1), (0, np.flatnonzero(~bits) + 1)):
        if not len(where):
            continue
        occ = np.arange(1, len(where) + 1) if qs is None else np.random.default_rng(n).integers(1, len(where) + 1, len(qs))
        bad += int((b.select_many(c, occ) != where[occ - 1]).sum())
    acc = np.arange(1, n + 1) if qs is None else np.maximum(qs, 1)
    bad += sum(b.access(int(i)) != int(bits[i - 1]) for i in acc[:10_000]) if n else 0
    return bad


def _seq_check(v, sigma, qs=None):
    s = LabelSequence(v, sigma=sigma)
    n = len(v)
    bad = 0
    if qs is None:
        syms = range(sigma)
        pos = np.arange(n + 1)
    else:
        syms = np.unique(v[np.random.default_rng(n).integers(0, n, 8)])
        pos = qs
    for a in syms:
        hit = v == a
        pre = np.concatenate([[0], np.cumsum(hit)])
        bad += int((s.rank_many(int(a), pos) != pre[pos]).sum())
        where = np.flatnonzero(hit) + 1
        if len(where):
            occ = np.arange(1, len(where) + 1) if qs is None else np.random.default_rng(a).integers(1, len(where) + 1, len(qs))
            bad += int((s.select_many(int(a), occ) != where[occ - 1]).sum())
    acc = np.arange(1, n + 1) if qs is None else np.maximum(qs, 1)
    bad += sum(s.access(int(i)) != int(v[i - 1]) for i in acc)
    return bad


def _rmq_check(v, mode, lefts, rights):
    r = RangeArgIndex(v, mode)
    got = r.query_many(lefts, rights)
    bad = 0
    pick = np.argmin if mode == "min" else np.argmax
    for i, j, m in zip(lefts.tolist(), rights.tolist(), got.tolist()):
        bad += m != i + int(pick(v[i - 1:j]))
    return bad


def _grid_check(n, pts, rects):
    g = PointGrid(pts, n)
    dense = np.zeros((n + 1, n + 1), dtype=np.int64)
    np.add.at(dense, (pts[:, 0], pts[:, 1]), 1)
    pre = dense.cumsum(0).cumsum(1)
    x1, x2, y1, y2 = rects.T
    want = pre[x2, y2] - pre[x1 - 1, y2] - pre[x2, y1 - 1] + pre[x1 - 1, y1 - 1]
    return int((g.count_many(rects) != want).sum())


def _all_rects(n):
    a, b = np.triu_indices(n)
    xs = np.stack([a + 1, b + 1], axis=1)
    i, j = np.meshgrid(np.arange(len(xs)), np.arange(len(xs)), indexing="ij")
    return np.concatenate([xs[i.ravel()], xs[j.ravel()]], axis=1)


def _warm_primitives():
    # compile outside the timed window
    _bits_check(np.array([True, False, True]))
    _seq_check(np.array([0, 1, 1]), 2)
    _rmq_check(np.array([1, 2]), "max", np.array([1]), np.array([2]))
    _grid_check(2, np.array([[1, 2], [2, 1]]), _all_rects(2))


@pytest.mark.criterion(1, "primitive equivalence with naive oracles")
def test_criterion_1_primitives(record_property):
    _warm_primitives()
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    bad = 0
    # exhaustive: every length up to 64, every query
    for n in range(65):
        for p in (0.1, 0.5, 0.9):
            bad += _bits_check(rng.random(n) < p)
    for n in range(1, 65):
        for sigma in (1, 2, 5, 64):
            bad += _seq_check(rng.integers(0, sigma, n), sigma)
        for mode in ("min", "max"):
            for hi in (3, 1000):
                v = rng.integers(0, hi, n)
                a, b = np.triu_indices(n)
                bad += _rmq_check(v, mode, a + 1, b + 1)
        pts = np.stack([np.arange(1, n + 1), rng.permutation(n) + 1], axis=1) if n % 2 else rng.integers(1, n + 1, (n, 2))
        bad += _grid_check(n, pts, _all_rects(n))
    # randomized: 10^4 queries at length 10^6 and a 10^4-point grid
    big = 10 ** 6
    qs = rng.integers(0, big + 1, 10 ** 4)
    bad += _bits_check(rng.random(big) < 0.3, qs)
    bad += _seq_check(rng.integers(0, 1000, big), 1000, qs)
    lefts = rng.integers(1, big + 1, 10 ** 4)
    rights = np.minimum(big, lefts + rng.integers(0, big, 10 ** 4) // rng.integers(1, 1000, 10 ** 4))
    bad += _rmq_check(rng.integers(0, 50, big), "max", lefts, rights)
    n = 10 ** 4
    pts = np.stack([np.arange(1, n + 1), rng.permutation(n) + 1], axis=1)
    xs = np.sort(rng.integers(1, n + 1, (10 ** 4, 2)), axis=1)
    ys = np.sort(rng.integers(1, n + 1, (10 ** 4, 2)), axis=1)
    bad += _grid_check(n, pts, np.concatenate([xs, ys], axis=1))
    elapsed = time.perf_counter() - t0
    record_property("detail", f"{bad} mismatches, {elapsed:.1f} s")
    assert bad == 0
    assert elapsed < 60


# criteria 2 and 3 share one corpus pass


@pytest.fixture(scope="session")
def unified_runs():
    for cls, k in CORPUS_CLASSES:
        o = PolygonOracle.build(generate(cls, 6, k=k, seed=0), impl_class=cls)
        o.adjacency_matrix(), o.degree(1), o.neighborhood(1)
    t0 = time.perf_counter()
    mismatches = {}
    kept = {}
    for cls, k in CORPUS_CLASSES:
        name = cls if k is None else f"{k}-polygon"
        bad = 0
        records = []
        for d in corpus(cls, k):
            truth = naive_matrix(d, cls)
            o = PolygonOracle.build(d, impl_class=cls)
            n = d.n
            adj = o.adjacency_matrix()
            degs = np.array([o.degree(v) for v in range(1, n + 1)])
            nbm = np.zeros((n, n), dtype=bool)
            ok_lists = True
            for v in range(1, n + 1):
                nb = o.neighborhood(v)
                ok_lists &= bool(np.array_equal(nb, np.flatnonzero(truth[v - 1]) + 1))
                nbm[v - 1, nb - 1] = True
            bad += (not np.array_equal(adj, truth)) + (not np.array_equal(degs, truth.sum(1))) + (not ok_lists)
            if cls in ("circle", "trapezoid"):
                records.append((d, truth, adj, degs, nbm))
        mismatches[name] = bad
        if records:
            kept[cls] = records
    return mismatches, kept, time.perf_counter() - t0


@pytest.mark.criterion(2, "unified oracle equals brute force on every class corpus")
def test_criterion_2_oracle_equivalence(unified_runs, record_property):
    mismatches, _, elapsed = unified_runs
    per = ", ".join(f"{name} {bad}" for name, bad in mismatches.items())
    record_property("detail", f"{sum(mismatches.values())} mismatching diagrams ({per}), {elapsed:.1f} s")
    assert sum(mismatches.values()) == 0
    assert elapsed < 600


@pytest.mark.criterion(3, "wavelet oracles agree with the unified oracle and brute force")
def test_criterion_3_cross_implementation(unified_runs, record_property):
    _, kept, _ = unified_runs
    bad = 0
    for cls, kind in (("circle", CircleOracle), ("trapezoid", TrapezoidOracle)):
        for d, truth, adj, degs, nbm in kept[cls]:
            o = kind.build(d)
            n = d.n
            us = np.repeat(np.arange(1, n + 1), n)
            vs = np.tile(np.arange(1, n + 1), n)
            wadj = o.adjacent_many(us, vs).reshape(n, n)
            wdeg = np.array([o.degree(v) for v in range(1, n + 1)])
            wnb = np.zeros((n, n), dtype=bool)
            for v in range(1, n + 1):
                wnb[v - 1, o.neighborhood(v) - 1] = True
            for ref in (truth, adj, nbm):
                bad += (not np.array_equal(wadj, ref)) + (not np.array_equal(wnb, ref))
            bad += (not np.array_equal(wdeg, degs)) + (not np.array_equal(wdeg, truth.sum(1)))
    record_property("detail", f"{bad} mismatches")
    assert bad == 0


@pytest.mark.criterion(4, "space budgets at n = 2^16")
def test_criterion_4_space_budgets(record_property):
    n = 1 << 16
    lg = math.ceil(math.log2(n))
    circ = generate("circle", n, seed=4)
    uni = PolygonOracle.build(circ, impl_class="circle")
    N = uni.N
    co = CircleOracle.build(circ)
    to = TrapezoidOracle.build(generate("trapezoid", n, seed=4))
    rows = [
        ("unified/circle", uni.bits_used(), 2 * (N - n) * lg + 64 * N),
        ("CircleOracle", co.bits_used(), 1.6 * n * lg + 32 * n),
        ("TrapezoidOracle", to.bits_used(), 4.8 * n * lg + 64 * n),
    ]
    record_property("detail", ", ".join(f"{name} {got} <= {limit:.0f}" for name, got, limit in rows))
    assert all(got <= limit for _, got, limit in rows)


@pytest.mark.criterion(5, "space ratio bounded and non-increasing for n = 2^10..2^16")
def test_criterion_5_space_trend(record_property):
    ratios = {"circle": [], "trapezoid": []}
    for e in range(10, 17):
        n = 1 << e
        ratios["circle"].append(CircleOracle.build(generate("circle", n, seed=e)).bits_used() / (n * e))
        ratios["trapezoid"].append(TrapezoidOracle.build(generate("trapezoid", n, seed=e)).bits_used() / (n * e))
    ok = True
    for name, lo, hi in (("circle", 1, 2), ("trapezoid", 3, 6)):
        r = ratios[name]
        record_property("detail", f"{name}: " + " ".join(f"{x:.3f}" for x in r))
        ok &= all(lo <= x <= hi for x in r)
        ok &= all(b <= a * 1.10 for a, b in zip(r, r[1:]))
    assert ok


@pytest.mark.criterion(6, "n = 10^5 circle diagram: build, adjacency and sweep times")
@pytest.mark.parametrize("kind", ["CircleOracle", "PolygonOracle"])
def test_criterion_6_performance(kind, record_property):
    n = 10 ** 5
    d = generate("circle", n, seed=6, spread=32)
    builder = CircleOracle.build if kind == "CircleOracle" else lambda x: PolygonOracle.build(x, impl_class="circle")
    builder(generate("circle", 20, seed=1)).neighborhood(1)
    t0 = time.perf_counter()
    o = builder(d)
    t_build = time.perf_counter() - t0
    rng = np.random.default_rng(6)
    us = rng.integers(1, n + 1, n).tolist()
    vs = rng.integers(1, n + 1, n).tolist()
    t0 = time.perf_counter()
    for u, v in zip(us, vs):
        o.adjacent(u, v)
    t_adj = time.perf_counter() - t0
    t0 = time.perf_counter()
    total = 0
    for v in range(1, n + 1):
        total += len(o.neighborhood(v))
    t_sweep = time.perf_counter() - t0
    record_property("detail", f"{kind}: build {t_build:.2f} s, adjacent {t_adj:.2f} s, sweep {t_sweep:.2f} s ({total} reported)")
    assert t_build < 10
    assert t_adj < 5
    assert t_sweep < 30


def _cli(*argv, builder=None):
    out = io.StringIO()
    return main(list(argv), out=out, builder=builder), out.getvalue()


def _pipeline(root):
    root.mkdir()
    outputs = []
    for cls, impl, k in (("circle", "unified", None), ("circle", "wavelet", None), ("k-polygon", "unified", 4),
                         ("trapezoid", "wavelet", None), ("circle-trapezoid", "unified", None)):
        src, bin_ = root / f"{cls}-{impl}.txt", root / f"{cls}-{impl}.sno"
        extra = ["--k", str(k)] if k else []
        outputs.append(_cli("gen", "--class", cls, "--n", "30", "--seed", "77", "--out", str(src), *extra))
        outputs.append(_cli("build", "--class", cls, "--impl", impl, "--input", str(src), "--out", str(bin_)))
        for op, args in (("degree", ["5"]), ("adjacent", ["3", "9"]), ("neighborhood", ["12"])):
            outputs.append(_cli("query", "--oracle", str(bin_), "--op", op, "--args", *args))
        outputs.append(_cli("check", "--class", cls, "--impl", impl, "--input", str(src)))
        outputs.append(_cli("space", "--oracle", str(bin_)))
    files = {p.name: p.read_bytes() for p in sorted(root.iterdir())}
    return outputs, files


@pytest.mark.criterion(7, "CLI golden round trips and exit codes")
def test_criterion_7_cli(tmp_path, record_property):
    first = _pipeline(tmp_path / "a")
    second = _pipeline(tmp_path / "b")
    assert first == second
    assert all(code == 0 for code, _ in first[0])

    d1 = tmp_path / "d1.txt"
    d1.write_text(D1_TEXT + "\n")
    sno = tmp_path / "d1.sno"
    assert _cli("build", "--class", "generic-polygon", "--input", str(d1), "--out", str(sno))[0] == 0
    assert _cli("query", "--oracle", str(sno), "--op", "degree", "--args", "2") == (0, "2\n")

    class Liar:
        def __init__(self, inner):
            self.inner = inner

        def adjacent_many(self, us, vs):
            return self.inner.adjacent_many(us, vs)

        def degree(self, v):
            return self.inner.degree(v) + (v == 1)

        def neighborhood(self, v):
            return self.inner.neighborhood(v)

    bad = tmp_path / "bad.txt"
    bad.write_text("circle 1\n2 1\n")
    codes = {
        "ok": _cli("check", "--class", "generic-polygon", "--input", str(d1))[0],
        "usage": _cli("check", "--class", "generic-polygon")[0],
        "validation": _cli("check", "--class", "circle", "--input", str(bad))[0],
        "mismatch": _cli("check", "--class", "generic-polygon", "--input", str(d1),
                         builder=lambda d, c, i="unified": Liar(build_oracle(d, c, i)))[0],
        "io": _cli("check", "--class", "circle", "--input", str(tmp_path / "absent.txt"))[0],
    }
    record_property("detail", f"exit codes {codes}")
    assert codes == {"ok": 0, "usage": 1, "validation": 2, "mismatch": 3, "io": 4}
