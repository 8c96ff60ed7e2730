"""Graphs on vertex set {0..n-1} and the subset enumerations indexed over them.

Subsets of the vertex set are plain ints used as bitmasks: vertex ``v`` is in
``s`` iff bit ``v`` is set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

MAX_ORIENTATION_N = 16
MAX_CLIQUE_N = 20


class GraphError(ValueError):
    pass


class SizeGuardError(ValueError):
    """Input too large for an exhaustive routine."""


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subsets_of(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def check_size(n: int, limit: int, what: str) -> None:
    if n > limit:
        raise SizeGuardError(f"{what} is limited to n <= {limit} (got n = {n})")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are canonical ``(u, v)`` pairs with u < v."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        canon = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {{{u},{v}}} has an endpoint outside 0..{self.n - 1}")
            canon.add((min(u, v), max(u, v)))
        if len(canon) != len(self.edges):
            raise GraphError("duplicate edge in edge list")
        object.__setattr__(self, "edges", tuple(sorted(canon)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        return cls(n, tuple(tuple(e) for e in edges))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, tuple(combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls(n, tuple((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, tuple((i, i + 1) for i in range(n - 1)))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, ())

    @classmethod
    def from_edge_bitmask(cls, n: int, bits: int) -> "Graph":
        """Inverse of :attr:`edge_bitmask`: bit i selects the i-th pair of ``combinations(range(n), 2)``."""
        pairs = list(combinations(range(n), 2))
        return cls(n, tuple(p for i, p in enumerate(pairs) if bits >> i & 1))

    @cached_property
    def edge_bitmask(self) -> int:
        index = {p: i for i, p in enumerate(combinations(range(self.n), 2))}
        return sum(1 << index[e] for e in self.edges)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if not self.has_edge(u, v)]

    def induced_edges(self, s: int) -> list[tuple[int, int]]:
        return [(u, v) for u, v in self.edges if s >> u & 1 and s >> v & 1]

    def __str__(self):
        es = " ".join(f"{u}-{v}" for u, v in self.edges)
        return f"Graph(n={self.n}, edges=[{es}])"


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on n vertices, by increasing edge bitmask."""
    m = n * (n - 1) // 2
    for bits in range(1 << m):
        yield Graph.from_edge_bitmask(n, bits)


def neighborhood(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n = {g.n}")
    return g.adjacency[v]


def _clique_table(g: Graph) -> list[bool]:
    check_size(g.n, MAX_CLIQUE_N, "clique enumeration")
    table = [False] * (1 << g.n)
    table[0] = True
    adj = g.adjacency
    for s in range(1, 1 << g.n):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        table[s] = table[rest] and (adj[low] & rest) == rest
    return table


def is_clique(g: Graph, s: int) -> bool:
    adj = g.adjacency
    for v in members(s):
        if (adj[v] | (1 << v)) & s != s:
            return False
    return True


def enumerate_induced_cliques(g: Graph) -> list[int]:
    """Non-empty induced cliques as masks, in increasing mask order."""
    table = _clique_table(g)
    return [s for s in range(1, 1 << g.n) if table[s]]


def is_triangle_free(g: Graph) -> bool:
    adj = g.adjacency
    return all(adj[u] & adj[v] == 0 for u, v in g.edges)


def is_connected_subset(g: Graph, s: int) -> bool:
    """True iff ``s`` is non-empty and induces a connected subgraph."""
    if s == 0:
        return False
    adj = g.adjacency
    seen = s & -s
    frontier = seen
    while frontier:
        nxt = 0
        for v in members(frontier):
            nxt |= adj[v]
        nxt &= s & ~seen
        seen |= nxt
        frontier = nxt
    return seen == s


def connected_components(g: Graph) -> list[int]:
    remaining = g.full
    comps = []
    adj = g.adjacency
    while remaining:
        seen = remaining & -remaining
        frontier = seen
        while frontier:
            nxt = 0
            for v in members(frontier):
                nxt |= adj[v]
            nxt &= ~seen
            seen |= nxt
            frontier = nxt
        comps.append(seen)
        remaining &= ~seen
    return comps


def is_biconnected_subset(g: Graph, s: int) -> bool:
    if not is_connected_subset(g, s):
        return False
    comp = next(c for c in connected_components(g) if c & s)
    if s & ~comp:
        return False
    return is_connected_subset(g, comp & ~s)


@dataclass(frozen=True)
class Orientation:
    """Acyclic orientation; arc ``(a, b)`` orients edge {a,b} as a -> b.

    Arcs point upwards: in the normal cone of the orientation x_a <= x_b, and an
    upper set is a vertex set closed under following arcs.
    """

    n: int
    arcs: tuple[tuple[int, int], ...]
    _succ: tuple[int, ...] = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        succ = [0] * self.n
        for a, b in self.arcs:
            succ[a] |= 1 << b
        object.__setattr__(self, "_succ", tuple(succ))
        if topological_order(self.n, succ) is None:
            raise GraphError("orientation has a directed cycle")

    @property
    def successors(self) -> tuple[int, ...]:
        return self._succ

    def is_upper_set(self, s: int) -> bool:
        return all(self._succ[v] & ~s == 0 for v in members(s))

    def linear_extension(self) -> tuple[int, ...]:
        """The topological order that always takes the smallest available vertex."""
        order = topological_order(self.n, self._succ)
        assert order is not None
        return order

    def linear_extensions(self) -> Iterator[tuple[int, ...]]:
        pred = [0] * self.n
        for a, b in self.arcs:
            pred[b] |= 1 << a

        def rec(placed: int, prefix: list[int]):
            if len(prefix) == self.n:
                yield tuple(prefix)
                return
            for v in range(self.n):
                if not placed >> v & 1 and pred[v] & ~placed == 0:
                    prefix.append(v)
                    yield from rec(placed | 1 << v, prefix)
                    prefix.pop()

        yield from rec(0, [])

    def upper_sets(self) -> list[int]:
        full = (1 << self.n) - 1
        return [s for s in range(full + 1) if self.is_upper_set(s)]


def topological_order(n: int, succ: list[int] | tuple[int, ...]) -> tuple[int, ...] | None:
    indeg = [0] * n
    for v in range(n):
        for w in members(succ[v]):
            indeg[w] += 1
    order = []
    avail = [v for v in range(n) if indeg[v] == 0]
    while avail:
        v = min(avail)
        avail.remove(v)
        order.append(v)
        for w in members(succ[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                avail.append(w)
    return tuple(order) if len(order) == n else None


def enumerate_acyclic_orientations(g: Graph) -> list[Orientation]:
    """Every acyclic orientation of g, edges decided in edge order, tail-first before head-first."""
    check_size(g.n, MAX_ORIENTATION_N, "acyclic orientation enumeration")
    edges = g.edges
    reach = [1 << v for v in range(g.n)]  # reach[v]: vertices reachable from v, v included
    out: list[Orientation] = []
    arcs: list[tuple[int, int]] = []

    def add_arc(a: int, b: int) -> list[int]:
        saved = list(reach)
        rb = reach[b]
        for x in range(g.n):
            if reach[x] >> a & 1:
                reach[x] |= rb
        return saved

    def rec(i: int):
        nonlocal reach
        if i == len(edges):
            out.append(Orientation(g.n, tuple(arcs)))
            return
        u, v = edges[i]
        for a, b in ((u, v), (v, u)):
            if reach[b] >> a & 1:
                continue  # a reachable from b: arc a -> b closes a cycle
            saved = add_arc(a, b)
            arcs.append((a, b))
            rec(i + 1)
            arcs.pop()
            reach = saved

    rec(0)
    return out


def chromatic_polynomial(g: Graph) -> list[int]:
    """Coefficients (constant term first) by deletion-contraction.

    Kept deliberately naive: it is the independent count behind the
    acyclic-orientation tests, P(G, -1) = (-1)^n * #acyclic orientations.
    """

    def rec(n: int, edges: frozenset) -> list[int]:
        if not edges:
            coeffs = [0] * (n + 1)
            coeffs[n] = 1
            return coeffs
        u, v = min(edges)
        deleted = rec(n, edges - {(u, v)})
        # contract v into u, relabel the top vertex n-1 into v's slot
        merged = set()
        for a, b in edges - {(u, v)}:
            a = u if a == v else a
            b = u if b == v else b
            a = v if a == n - 1 else a
            b = v if b == n - 1 else b
            if a != b:
                merged.add((min(a, b), max(a, b)))
        contracted = rec(n - 1, frozenset(merged))
        contracted = contracted + [0] * (len(deleted) - len(contracted))
        return [d - c for d, c in zip(deleted, contracted)]

    return rec(g.n, frozenset(g.edges))


def evaluate_polynomial(coeffs: list[int], x: int) -> int:
    return sum(c * x**k for k, c in enumerate(coeffs))
