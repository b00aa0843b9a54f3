import math
import threading

import numpy as np
import pytest
from conftest import brute_lists, naive_virtual

from succinct_oracles.diagrams import PolygonDiagram, generate, naive_matrix
from succinct_oracles.errors import NotFoundError, RangeError, ValidationError
from succinct_oracles.polygon_oracle import PolygonOracle

CLASSES = [
    ("circle", None), ("k-polygon", 3), ("k-polygon", 4), ("k-polygon", 5),
    ("circle-trapezoid", None), ("circular-arc", None), ("interval", None),
    ("permutation", None), ("trapezoid", None), ("generic-polygon", None),
]
ARRAYS = ["N", "N_a", "P_a", "N_c", "P_c"]


@pytest.fixture
def o1(d1):
    return PolygonOracle.build(d1)


def test_build_d1(o1):
    assert o1.F.to_numpy().astype(int).tolist() == [1, 1, 0, 1, 0, 0]
    assert (o1.Sp.to_numpy() + 1).tolist() == [1, 2, 3]
    assert o1.n == 3 and o1.N == 6 and o1.k == 2


def test_build_d2(d2):
    o = PolygonOracle.build(d2, impl_class="circle-trapezoid")
    assert o.F.to_numpy().astype(int).tolist() == [1, 0, 1, 0, 0, 0, 0, 0]
    # one entry per non-first corner: N - n = 6
    assert (o.Sp.to_numpy() + 1).tolist() == [1, 2, 1, 1, 2, 2]


def test_single_chord():
    o = PolygonOracle.build(PolygonDiagram([1, 1], [False, False]))
    assert o.F.to_numpy().astype(int).tolist() == [1, 0]
    assert (o.Sp.to_numpy() + 1).tolist() == [1]
    assert o.degree(1) == 0
    assert o.neighborhood(1).tolist() == []


def test_corner_string_queries(o1):
    assert o1.s_access(3) == 1
    assert o1.s_rank(2, 6) == 2
    assert o1.s_select(2, 2) == 5
    assert o1.s_rank(1, 0) == 0
    with pytest.raises(NotFoundError):
        o1.s_select(2, 3)
    with pytest.raises(RangeError):
        o1.s_access(7)


def test_intervals(o1, d2):
    assert o1.interval(2, 1) == (2, 5)
    assert o1.side_count(1) == 2
    o2 = PolygonOracle.build(d2, impl_class="circle-trapezoid")
    assert o2.interval(1, 4) == (6, 1)
    with pytest.raises(RangeError):
        o2.interval(1, 5)


def test_virtual_examples(o1, d2):
    assert [o1.virt("N_c", i) for i in range(1, 7)] == [3, 5, 0, 6, 0, 0]
    assert [o1.virt("P_c", i) for i in range(1, 7)] == [7, 7, 1, 7, 2, 4]
    o2 = PolygonOracle.build(d2, impl_class="circle-trapezoid")
    assert o2.virt("N_a", 1) == 2
    assert o2.virt("N_a", 2) == 0
    with pytest.raises(ValidationError):
        o1.virt("Q", 1)


@pytest.mark.parametrize("cls,k", CLASSES)
def test_corner_string_round_trip(cls, k):
    for seed in range(10):
        d = generate(cls, 1 + 5 * seed, k=k, seed=seed)
        o = PolygonOracle.build(d, impl_class=cls)
        from succinct_oracles.diagrams import to_polygon_diagram
        p = to_polygon_diagram(d, cls)
        assert [o.s_access(i) for i in range(1, o.N + 1)] == p.labels.tolist()
        for u in range(1, o.n + 1):
            occ = np.flatnonzero(p.labels == u) + 1
            assert o.corners(u).tolist() == occ.tolist()
            for j, pos in enumerate(occ, 1):
                assert o.s_select(u, j) == pos
                assert o.s_rank(u, pos) == j


@pytest.mark.parametrize("cls,k", CLASSES)
def test_virtual_arrays_match_naive(cls, k):
    from succinct_oracles.diagrams import to_polygon_diagram
    for seed in range(15):
        d = generate(cls, 1 + 3 * seed, k=k, seed=seed)
        o = PolygonOracle.build(d, impl_class=cls)
        p = to_polygon_diagram(d, cls)
        want = naive_virtual(p.labels.tolist(), p.arcs.tolist(), forced=o.forced)
        for name in ARRAYS:
            assert [o.virt(name, i) for i in range(1, o.N + 1)] == want[name], (cls, seed, name)


def test_forced_mode_hides_chords():
    d = generate("interval", 20, seed=3)
    o = PolygonOracle.build(d, impl_class="interval")
    assert o.forced
    assert all(o.virt("N_c", i) == 0 for i in range(1, o.N + 1))
    assert all(o.virt("P_c", i) == o.N + 1 for i in range(1, o.N + 1))


def test_queries_d1(o1):
    assert o1.adjacent(1, 2)
    assert not o1.adjacent(1, 3)
    assert not o1.adjacent(2, 2)
    assert o1.neighborhood(2).tolist() == [1, 3]
    assert o1.neighborhood(1).tolist() == [2]
    assert o1.degree(2) == 2
    assert o1.degree(3) == 1
    with pytest.raises(RangeError):
        o1.degree(4)
    with pytest.raises(RangeError):
        o1.adjacent(0, 1)
    with pytest.raises(RangeError):
        o1.neighborhood(4)


def test_d2_adjacent(d2):
    assert PolygonOracle.build(d2, impl_class="circle-trapezoid").adjacent(1, 2)


@pytest.mark.parametrize("cls,k", CLASSES)
@pytest.mark.parametrize("wrap_scan", [True, False])
def test_equivalence_small(cls, k, wrap_scan):
    for seed in range(40):
        n = 1 + (seed * 7) % 40
        d = generate(cls, n, k=k, seed=seed)
        m = naive_matrix(d, cls)
        o = PolygonOracle.build(d, impl_class=cls, wrap_scan=wrap_scan)
        assert np.array_equal(o.adjacency_matrix(), m)
        truth = brute_lists(m)
        for u in range(1, n + 1):
            nb = o.neighborhood(u)
            assert nb.tolist() == truth[u - 1], (cls, seed, u)
            assert o.degree(u) == len(nb)
            assert not o.scratch().any()


def test_neighborhood_output_strictly_increasing():
    d = generate("circle-trapezoid", 80, seed=2)
    o = PolygonOracle.build(d, impl_class="circle-trapezoid")
    for u in range(1, 81):
        nb = o.neighborhood(u)
        assert (np.diff(nb) > 0).all()


def test_explicit_degrees():
    d = generate("k-polygon", 60, k=4, seed=5)
    plain = PolygonOracle.build(d, impl_class="k-polygon")
    stored = PolygonOracle.build(d, impl_class="k-polygon", explicit_degrees=True)
    assert stored.degrees is not None
    assert [stored.degree(u) for u in range(1, 61)] == [plain.degree(u) for u in range(1, 61)]
    rep = stored.space_report()
    assert rep["degrees"] == 64 * 60
    assert rep["total"] == plain.space_report()["total"] + 64 * 60


def test_space_report_additive(o1):
    rep = o1.space_report()
    assert rep["total"] == sum(v for name, v in rep.items() if name != "total")
    assert o1.bits_used() == rep["total"]


def test_sp_component_bound():
    # fixed per-level directories dominate at toy sizes, so check at n = 1024
    for cls, k in (("circle", None), ("k-polygon", 5), ("circle-trapezoid", None)):
        o = PolygonOracle.build(generate(cls, 1024, k=k, seed=1), impl_class=cls)
        assert o.space_report()["Sp"] <= 2 * (o.N - o.n) * math.ceil(math.log2(o.n))


def test_space_budget_2_15():
    n = 1 << 15
    o = PolygonOracle.build(generate("circle", n, seed=15), impl_class="circle")
    N = o.N
    assert o.bits_used() <= 2 * (N - n) * 15 + 64 * N


def test_requires_class_for_non_polygon(d4):
    with pytest.raises(ValidationError):
        PolygonOracle.build(d4)
    with pytest.raises(ValidationError):
        PolygonOracle.build(d4, impl_class="trapezoid")


def test_concurrent_neighborhoods():
    d = generate("circle-trapezoid", 150, seed=8)
    o = PolygonOracle.build(d, impl_class="circle-trapezoid")
    truth = brute_lists(naive_matrix(d, "circle-trapezoid"))
    errors = []

    def work(offset):
        for rep in range(3):
            for u in range(1 + offset, 151, 4):
                if o.neighborhood(u).tolist() != truth[u - 1] or o.degree(u) != len(truth[u - 1]):
                    errors.append(u)

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert errors == []
