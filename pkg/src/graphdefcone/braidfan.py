"""The refined braid fan, its wall-crossing circuits, and ordered partitions.

Every cell of the refined braid fan is a simplicial cone spanned by vectors
``i_S`` (+1 on S, -1 off S).  A permutation is read bottom to top, so its
upper sets are its suffixes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator

from .graphcore import (
    Graph,
    GraphError,
    check_size,
    connected_components,
    enumerate_acyclic_orientations,
    is_connected_subset,
    mask_of,
    members,
)

MAX_CELL_N = 8
MAX_PARTITION_N = 7


def ray_vector(s: int, n: int) -> tuple[int, ...]:
    if not 0 <= s < 1 << n:
        raise ValueError(f"subset mask {s} out of range for n = {n}")
    return tuple(1 if s >> v & 1 else -1 for v in range(n))


def upper_sets(perm: tuple[int, ...]) -> list[int]:
    """Suffix chain of ``perm``: the empty set up to the full vertex set."""
    out = [0]
    acc = 0
    for v in reversed(perm):
        acc |= 1 << v
        out.append(acc)
    return out


class Apex(enum.Enum):
    EMPTY = "empty"
    FULL = "full"


@dataclass(frozen=True)
class RefinedCell:
    perm: tuple[int, ...]
    apex: Apex

    @property
    def n(self) -> int:
        return len(self.perm)

    def rays(self) -> list[int]:
        chain = upper_sets(self.perm)
        return chain[:-1] if self.apex is Apex.EMPTY else chain[1:]


@dataclass(frozen=True)
class LinearDependence:
    """Integer relation ``sum coeffs[S] * i_S = 0`` on the rays of two adjacent cells.

    ``kind`` is ``"apex"`` for the pair (sigma^0, sigma^V) and ``"swap"`` for
    an adjacent transposition of u and v above the upper set ``base``.  The
    coefficients live on the actual rays of the two cells, so at the bottom
    (resp. top) of the chain i_V is rewritten as -i_0 (resp. i_0 as -i_V).
    """

    kind: str
    coeffs: tuple[tuple[int, int], ...]
    u: int = -1
    v: int = -1
    base: int = 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def wall_form(self) -> dict[int, int]:
        """The relation before the apex rewrite; for swaps i_{S+u} + i_{S+v} - i_S - i_{S+u+v}."""
        if self.kind == "apex":
            return self.as_dict()
        s, u, v = self.base, 1 << self.u, 1 << self.v
        return {s | u: 1, s | v: 1, s: -1, s | u | v: -1}


def _swap_dependence(n: int, u: int, v: int, base: int, apex: Apex) -> LinearDependence:
    full = (1 << n) - 1
    coeffs: dict[int, int] = {}

    def put(s: int, c: int):
        if apex is Apex.EMPTY and s == full:
            s, c = 0, -c
        elif apex is Apex.FULL and s == 0:
            s, c = full, -c
        coeffs[s] = coeffs.get(s, 0) + c

    put(base | 1 << u, 1)
    put(base | 1 << v, 1)
    put(base, -1)
    put(base | 1 << u | 1 << v, -1)
    return LinearDependence("swap", tuple(sorted((s, c) for s, c in coeffs.items() if c)), u, v, base)


def adjacent_cell_pairs(n: int) -> Iterator[tuple[RefinedCell, RefinedCell, LinearDependence]]:
    """Every unordered pair of adjacent maximal cells with its unique circuit."""
    check_size(n, MAX_CELL_N, "refined braid fan adjacency")
    full = (1 << n) - 1
    for perm in permutations(range(n)):
        yield (
            RefinedCell(perm, Apex.EMPTY),
            RefinedCell(perm, Apex.FULL),
            LinearDependence("apex", tuple(sorted({0: 1, full: 1}.items())) if n else ((0, 2),)),
        )
    for apex in (Apex.EMPTY, Apex.FULL):
        for perm in permutations(range(n)):
            for k in range(n - 1):
                u, v = perm[k], perm[k + 1]
                # each unordered pair once: emit from the side where u < v
                if u > v:
                    continue
                other = perm[:k] + (v, u) + perm[k + 2:]
                base = mask_of(perm[k + 2:])
                yield RefinedCell(perm, apex), RefinedCell(other, apex), _swap_dependence(n, u, v, base, apex)


def _swap_position(a: RefinedCell, b: RefinedCell) -> int | None:
    if a.apex is not b.apex or a.n != b.n:
        return None
    diff = [k for k in range(a.n) if a.perm[k] != b.perm[k]]
    if len(diff) == 2 and diff[1] == diff[0] + 1 and a.perm[diff[0]] == b.perm[diff[1]] and a.perm[diff[1]] == b.perm[diff[0]]:
        return diff[0]
    return None


def same_graphical_cone(g: Graph, a: RefinedCell, b: RefinedCell) -> bool:
    if a.n != g.n or b.n != g.n:
        raise ValueError("cells and graph disagree on n")
    if a.perm == b.perm and a.apex is not b.apex:
        return True
    k = _swap_position(a, b)
    if k is None:
        raise ValueError("cells are not adjacent")
    return not g.has_edge(a.perm[k], a.perm[k + 1])


@dataclass(frozen=True)
class OrderedPartition:
    """Connected parts listed along a linear extension, plus quotient arcs.

    ``arcs`` holds pairs ``(i, j)`` of part indices with i < j, one per pair of
    parts joined by an edge of G; part i lies below part j.
    """

    parts: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]

    def part_of(self, v: int) -> int:
        for i, p in enumerate(self.parts):
            if p >> v & 1:
                return i
        raise ValueError(f"vertex {v} not covered")

    def above(self) -> list[int]:
        """above[i]: mask of part indices reachable from part i (i included)."""
        k = len(self.parts)
        reach = [1 << i for i in range(k)]
        for i in reversed(range(k)):
            for a, b in self.arcs:
                if a == i:
                    reach[i] |= reach[b]
        return reach

    def upper_sets(self) -> list[int]:
        """Unions of parts closed upwards, as vertex masks, in increasing order."""
        k = len(self.parts)
        reach = self.above()
        out = []
        for sel in range(1 << k):
            if all(reach[i] & ~sel == 0 for i in range(k) if sel >> i & 1):
                out.append(sum(self.parts[i] for i in range(k) if sel >> i & 1))
        return sorted(out)

    def to_json(self) -> dict:
        return {
            "parts": [list(members(p)) for p in self.parts],
            "precedes": [list(a) for a in self.arcs],
        }


def _set_partitions(elems: list[int]) -> Iterator[list[int]]:
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for sub in _set_partitions(rest):
        yield [1 << first] + sub
        for i in range(len(sub)):
            yield sub[:i] + [sub[i] | 1 << first] + sub[i + 1:]


def enumerate_ordered_partitions(g: Graph) -> list[OrderedPartition]:
    check_size(g.n, MAX_PARTITION_N, "ordered partition enumeration")
    out = []
    for blocks in _set_partitions(list(range(g.n))):
        if not all(is_connected_subset(g, b) for b in blocks):
            continue
        blocks = sorted(blocks)
        index = {}
        for i, b in enumerate(blocks):
            for v in members(b):
                index[v] = i
        qedges = sorted({(min(index[u], index[v]), max(index[u], index[v])) for u, v in g.edges if index[u] != index[v]})
        quotient = Graph(len(blocks), tuple(qedges))
        for omega in enumerate_acyclic_orientations(quotient):
            order = omega.linear_extension()
            pos = {b: k for k, b in enumerate(order)}
            parts = tuple(blocks[b] for b in order)
            arcs = tuple(sorted((pos[a], pos[b]) for a, b in omega.arcs))
            out.append(OrderedPartition(parts, arcs))
    return out


def cone_rays_of_ordered_partition(g: Graph, op: OrderedPartition) -> list[int]:
    if sum(op.parts) != g.full or any(a & b for i, a in enumerate(op.parts) for b in op.parts[i + 1:]):
        raise GraphError("parts do not partition the vertex set")
    return op.upper_sets()


def refines(a: OrderedPartition, b: OrderedPartition, n: int) -> bool:
    """True iff ``a`` refines ``b`` (its cone contains the cone of ``b`` as a face)."""
    if not all(any(p & ~q == 0 for q in b.parts) for p in a.parts):
        return False
    ra, rb = a.above(), b.above()
    for u in range(n):
        for v in range(n):
            if ra[a.part_of(u)] >> a.part_of(v) & 1 and not rb[b.part_of(u)] >> b.part_of(v) & 1:
                return False
    return True


def maximal_partition(g: Graph, order: tuple[int, ...]) -> OrderedPartition:
    """Singleton parts along ``order``, arcs along the edges of g."""
    pos = {v: k for k, v in enumerate(order)}
    arcs = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
    return OrderedPartition(tuple(1 << v for v in order), arcs)


def lineality_dimension(g: Graph) -> int:
    return len(connected_components(g))
