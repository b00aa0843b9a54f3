import numpy as np
import pytest

from succinct_oracles.diagrams import (
    ArcDiagram,
    ChordDiagram,
    ClassTag,
    PermutationDiagram,
    PolygonDiagram,
    generate,
    naive_adjacent,
    naive_degree,
    naive_matrix,
    naive_neighborhood,
    native_matrix,
    parse_diagram,
    polygon_sides,
    render,
    sides_intersect,
    to_polygon_diagram,
    validate,
)
from succinct_oracles.errors import RangeError, SuccinctError, ValidationError

CLASSES = [
    ("circle", None), ("permutation", None), ("interval", None), ("circular-arc", None),
    ("k-polygon", 3), ("k-polygon", 4), ("k-polygon", 5), ("circle-trapezoid", None),
    ("trapezoid", None), ("generic-polygon", None),
]


def test_parse_circle(d4):
    d, perm = parse_diagram("circle 3\n1 3\n2 5\n4 6", "circle")
    assert d == d4
    assert list(perm) == [1, 2, 3]


def test_parse_polygon(d2):
    assert d2.n == 2 and d2.N == 8
    assert d2.labels.tolist() == [1, 1, 2, 2, 1, 1, 2, 2]
    assert d2.arcs.tolist() == [True, False] * 4
    validate(d2, "circle-trapezoid")


def test_parse_relabels_to_first_occurrence():
    d, perm = parse_diagram("polygon 3 6\n2/c 1/c 2/c 3/c 1/c 3/c", "generic-polygon")
    assert d.labels.tolist() == [1, 2, 1, 3, 2, 3]
    assert list(perm) == [2, 1, 3]


@pytest.mark.parametrize("text,cls,rule", [
    ("circle 1\n2 1", "circle", "chord-order"),
    ("circle 2\n1 2\n2 3", "circle", "duplicate-endpoint"),
    ("polygon 2 4\n1/x 2/c 1/c 2/c", "generic-polygon", "token"),
    ("polygon 2 4\n1/a 2/a 1/a 2/c", "generic-polygon", "adjacent-arcs"),
    ("polygon 2 4\n1/c 2/c 1/c 2/a", "circle-trapezoid", "circle-trapezoid-shape"),
    ("permutation 3\n1 1 2", "permutation", "permutation"),
])
def test_parse_errors(text, cls, rule):
    with pytest.raises(ValidationError) as exc:
        parse_diagram(text, cls)
    assert exc.value.rule == rule
    assert exc.value.line is not None


def test_parse_errors_are_structured():
    with pytest.raises(ValidationError) as exc:
        parse_diagram("circle 1\n2 1", "circle")
    assert "line 2" in str(exc.value)


@pytest.mark.parametrize("cls,k", CLASSES)
def test_render_round_trip(cls, k):
    for seed in range(5):
        d = generate(cls, 1 + 7 * seed, k=k, seed=seed)
        again, _ = parse_diagram(render(d, cls), cls)
        assert again == d


@pytest.mark.parametrize("cls,k", CLASSES)
def test_generator_deterministic_and_valid(cls, k):
    a = generate(cls, 30, k=k, seed=11)
    b = generate(cls, 30, k=k, seed=11)
    assert a == b
    validate(a, cls)
    assert render(a, cls) == render(b, cls)


def test_generator_examples():
    assert generate("circle", 3, seed=7) == generate("circle", 3, seed=7)
    validate(generate("circle-trapezoid", 50, seed=1), "circle-trapezoid")
    d = generate("k-polygon", 10, k=4, seed=1)
    assert (d.corner_counts[1:] == 4).all()
    assert not d.arcs.any()
    with pytest.raises(ValidationError):
        generate("circle", 0, seed=1)


def test_interval_generator_never_wraps():
    for seed in range(20):
        d = generate("interval", 20, seed=seed)
        assert (d.starts < d.ends).all()


def test_adapter_examples(d1, d4, d3b):
    p = to_polygon_diagram(d4, "circle")
    assert p == d1
    ident = to_polygon_diagram(PermutationDiagram([1, 2]), "permutation")
    assert naive_matrix(ident).sum() == 0
    t = to_polygon_diagram(d3b, "trapezoid")
    validate(t, "circle-trapezoid")
    assert np.array_equal(naive_matrix(t), native_matrix(d3b, "trapezoid"))


def test_adapter_class_mismatch(d4):
    with pytest.raises(ValidationError):
        to_polygon_diagram(d4, "trapezoid")


def test_sides_intersect_examples():
    assert sides_intersect("chord", (8, 12), "chord", (10, 14))
    assert sides_intersect("chord", (5, 6), "arc", (2, 8))
    assert sides_intersect("arc", (9, 10), "arc", (7, 11))
    assert not sides_intersect("chord", (1, 3), "chord", (4, 6))


def test_sides_intersect_wrapping():
    assert sides_intersect("arc", (10, 2), "chord", (1, 5))
    assert not sides_intersect("arc", (10, 2), "chord", (3, 5))
    assert sides_intersect("chord", (9, 3), "chord", (1, 5))


def test_naive_examples(d1, d2):
    m = naive_matrix(d1)
    edges = {(u + 1, v + 1) for u, v in zip(*np.nonzero(np.triu(m)))}
    assert edges == {(1, 2), (2, 3)}
    assert naive_adjacent(d2, 1, 2)
    assert not naive_adjacent(d1, 2, 2)
    assert naive_neighborhood(d1, 2) == [1, 3]
    assert naive_degree(d1, 3) == 1
    single = PolygonDiagram([1, 1], [False, False])
    assert naive_degree(single, 1) == 0
    with pytest.raises(RangeError):
        naive_adjacent(d1, 1, 4)


def test_two_corner_chord_has_one_side(d1):
    assert len(polygon_sides(d1, 1)) == 1


@pytest.mark.parametrize("cls,k", [c for c in CLASSES if c[0] != "generic-polygon"])
def test_embedding_preserves_adjacency(cls, k):
    for seed in range(200):
        d = generate(cls, 1 + seed % 50, k=k, seed=seed)
        native = native_matrix(d, cls)
        embedded = naive_matrix(d, cls)
        assert np.array_equal(native, embedded), (cls, seed)
        assert np.array_equal(embedded, embedded.T)
        assert not embedded.diagonal().any()


def test_vectorized_matrix_matches_pairwise():
    for seed in range(30):
        d = generate("generic-polygon", 1 + seed % 12, seed=seed)
        m = naive_matrix(d)
        for u in range(1, d.n + 1):
            for v in range(1, d.n + 1):
                want = u != v and any(
                    sides_intersect(ek, es, fk, fs)
                    for ek, es in polygon_sides(d, u) for fk, fs in polygon_sides(d, v))
                assert m[u - 1, v - 1] == want


def test_class_tags():
    assert ClassTag.parse("circulararc") is ClassTag.parse("circular-arc")
    for tag in ClassTag:
        assert ClassTag.from_code(tag.code) is tag
    with pytest.raises(SuccinctError):
        ClassTag.parse("hexagon")


def test_arc_diagram_wrap_allowed_only_for_circular_arc():
    d, _ = parse_diagram("circulararc 2\n4 1\n2 3", "circular-arc")
    assert d == ArcDiagram([4, 2], [1, 3])
    with pytest.raises(ValidationError) as exc:
        parse_diagram("interval 2\n4 1\n2 3", "interval")
    assert exc.value.rule == "interval-order"


def test_chord_diagram_canonical_order():
    with pytest.raises(ValidationError):
        validate(ChordDiagram([2, 1], [3, 4]), "circle")
