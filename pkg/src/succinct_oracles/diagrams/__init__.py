"""Diagram types, text formats, generators, class adapters and brute force."""

from .adapters import to_polygon_diagram
from .brute import (
    native_matrix,
    naive_adjacent,
    naive_degree,
    naive_matrix,
    naive_neighborhood,
    polygon_sides,
    sides_intersect,
)
from .generate import generate
from .textio import parse_diagram, render
from .types import (
    ArcDiagram,
    ChordDiagram,
    ClassTag,
    PermutationDiagram,
    PolygonDiagram,
    TrapezoidDiagram,
)
from .validate import validate

__all__ = [
    "ArcDiagram", "ChordDiagram", "ClassTag", "PermutationDiagram", "PolygonDiagram",
    "TrapezoidDiagram", "generate", "naive_adjacent", "naive_degree", "naive_matrix",
    "naive_neighborhood", "native_matrix", "parse_diagram", "polygon_sides", "render",
    "sides_intersect", "to_polygon_diagram", "validate",
]
