"""Concrete polytopes P_h: support vectors, vertices via acyclic orientations, checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .braidfan import upper_sets
from .defcone import (
    HeightLike,
    HeightVector,
    NotInConeError,
    _heights,
    contains,
    generate_irredundant_description,
)
from .graphcore import Graph, Orientation, check_size, enumerate_acyclic_orientations, members

MAX_VERTEX_N = 10

Point = tuple[Fraction, ...]


def support_of_zonotope(g: Graph) -> HeightVector:
    """h_S = #edges meeting S - #edges avoiding S."""
    m = len(g.edges)
    vals = []
    for s in range(1 << g.n):
        meet = sum(1 for u, v in g.edges if s >> u & 1 or s >> v & 1)
        vals.append(Fraction(2 * meet - m))
    return HeightVector(tuple(vals))


def support_at(points: Sequence[Sequence[Fraction]], s: int, n: int) -> Fraction:
    """max over the points of <i_S, x>."""
    return max(sum(x[v] if s >> v & 1 else -x[v] for v in range(n)) for x in points)


def _vertex_from_order(h: HeightVector, order: Sequence[int]) -> Point:
    chain = upper_sets(tuple(order))
    x = [Fraction(0)] * len(order)
    for k in range(1, len(chain)):
        (v,) = members(chain[k] & ~chain[k - 1])
        x[v] = (h[chain[k]] - h[chain[k - 1]]) / 2
    return tuple(x)


def vertex_of_orientation(
    g: Graph,
    h: HeightLike,
    omega: Orientation,
    order: Sequence[int] | None = None,
    check: bool = True,
) -> Point:
    """Vertex of P_h whose normal cone is the cone of ``omega``.

    Along a linear extension with upper-set chain 0 = S_0 < S_1 < ... < S_n = V,
    consecutive tight constraints differ by 2 x_v for the added vertex v.
    """
    h = _heights(h)
    if check:
        res = contains(generate_irredundant_description(g), h)
        if not res.in_cone:
            raise NotInConeError(res.violated)
    if order is None:
        order = omega.linear_extension()
    else:
        pos = {v: i for i, v in enumerate(order)}
        if sorted(order) != list(range(g.n)) or any(pos[a] > pos[b] for a, b in omega.arcs):
            raise ValueError("order is not a linear extension of the orientation")
    return _vertex_from_order(h, order)


@dataclass
class VertexSet:
    points: list[Point]
    orientations: int  # number of acyclic orientations the points came from

    def __len__(self):
        return len(self.points)

    def to_json(self) -> dict:
        return {
            "count": len(self.points),
            "acyclic_orientations": self.orientations,
            "vertices": [[str(c) for c in p] for p in self.points],
        }

    def to_off(self) -> str:
        n = len(self.points[0]) if self.points else 0
        lines = ["nOFF", str(n), f"{len(self.points)} 0 0"]
        lines += [" ".join(repr(float(c)) for c in p) for p in self.points]
        return "\n".join(lines) + "\n"


def vertices(g: Graph, h: HeightLike, check: bool = True) -> VertexSet:
    check_size(g.n, MAX_VERTEX_N, "vertex enumeration")
    h = _heights(h)
    if check:
        res = contains(generate_irredundant_description(g), h)
        if not res.in_cone:
            raise NotInConeError(res.violated)
    orients = enumerate_acyclic_orientations(g)
    pts = {_vertex_from_order(h, o.linear_extension()) for o in orients}
    return VertexSet(sorted(pts), len(orients))


@dataclass
class PolytopeReport:
    vertices: int
    orientations: int
    max_violation: Fraction  # max over vertices and S of <i_S, x> - h_S
    violating: list[int] = field(default_factory=list)  # sets S with a positive violation
    untight: list[int] = field(default_factory=list)  # sets S whose inequality touches no vertex

    @property
    def ok(self) -> bool:
        return self.max_violation <= 0

    def to_json(self) -> dict:
        return {
            "vertices": self.vertices,
            "acyclic_orientations": self.orientations,
            "max_violation": str(self.max_violation),
            "violating": self.violating,
            "untight": self.untight,
        }


def validate_polytope(g: Graph, h: HeightLike) -> PolytopeReport:
    """Check the orientation vertices of P_h against all 2^n inequalities, exactly."""
    h = _heights(h)
    vs = vertices(g, h, check=False)
    worst = None
    violating, untight = [], []
    for s in range(1 << g.n):
        gap = support_at(vs.points, s, g.n) - h[s]
        worst = gap if worst is None else max(worst, gap)
        if gap > 0:
            violating.append(s)
        elif gap < 0:
            untight.append(s)
    return PolytopeReport(len(vs), vs.orientations, worst, violating, untight)
