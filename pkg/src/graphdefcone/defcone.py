"""Deformation cones of graphical zonotopes in height coordinates h in Q^(2^V).

A height vector h describes P_h = {x : <i_S, x> <= h_S for all S}.  The cone
is cut out by linear forms on h: equations must vanish, inequalities must be
nonnegative.  The wall-crossing form of an edge {u,v} above S is

    n(u, v, S) = f_{S+u} + f_{S+v} - f_S - f_{S+u+v}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence, Union

from .graphcore import (
    Graph,
    GraphError,
    check_size,
    enumerate_induced_cliques,
    is_clique,
    is_triangle_free,
    members,
    popcount,
    subsets_of,
)
from . import polyoracle

MAX_DESCRIPTION_N = 16


class NotInSpanError(ValueError):
    def __init__(self, tag, message: str = ""):
        self.tag = tag
        super().__init__(message or f"height vector violates equation {tag}")


class NotInConeError(ValueError):
    def __init__(self, tag, message: str = ""):
        self.tag = tag
        super().__init__(message or f"height vector violates {tag}")


def set_label(mask: int) -> str:
    vs = members(mask)
    if not vs:
        return "∅"
    sep = "," if vs[-1] >= 10 else ""
    return sep.join(str(v) for v in vs)


# ---------------------------------------------------------------------------
# height vectors


@dataclass(frozen=True)
class HeightVector:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        k = len(self.values)
        if k == 0 or k & (k - 1):
            raise ValueError("a height vector has 2^n entries")
        object.__setattr__(self, "values", tuple(Fraction(x) for x in self.values))

    @classmethod
    def zeros(cls, n: int) -> "HeightVector":
        return cls((Fraction(0),) * (1 << n))

    @classmethod
    def from_function(cls, n: int, f) -> "HeightVector":
        return cls(tuple(Fraction(f(s)) for s in range(1 << n)))

    @property
    def n(self) -> int:
        return len(self.values).bit_length() - 1

    def __getitem__(self, s: int) -> Fraction:
        return self.values[s]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __add__(self, other: "HeightVector") -> "HeightVector":
        return HeightVector(tuple(a + b for a, b in zip(self.values, other.values, strict=True)))

    def __sub__(self, other: "HeightVector") -> "HeightVector":
        return HeightVector(tuple(a - b for a, b in zip(self.values, other.values, strict=True)))

    def __mul__(self, c) -> "HeightVector":
        c = Fraction(c)
        return HeightVector(tuple(c * a for a in self.values))

    __rmul__ = __mul__

    def __neg__(self) -> "HeightVector":
        return self * -1


HeightLike = Union[HeightVector, Sequence]


def _heights(h: HeightLike) -> HeightVector:
    return h if isinstance(h, HeightVector) else HeightVector(tuple(h))


# ---------------------------------------------------------------------------
# forms and descriptions


@dataclass(frozen=True)
class EqApexPair:
    def to_json(self) -> dict:
        return {"kind": "apex"}

    def __str__(self):
        return "apex"


@dataclass(frozen=True)
class EqNonClique:
    """Equation of the non-edge {u,v} inside ``subset``."""

    subset: int
    u: int
    v: int

    def to_json(self) -> dict:
        return {"kind": "non_clique", "mask": self.subset, "set": list(members(self.subset)), "pair": [self.u, self.v]}

    def __str__(self):
        return f"non-clique S={{{set_label(self.subset)}}} pair={{{self.u},{self.v}}}"


@dataclass(frozen=True)
class IneqFacet:
    """Inequality n(u, v, subset) >= 0 of the edge {u,v}."""

    u: int
    v: int
    subset: int

    def to_json(self) -> dict:
        return {"kind": "facet", "pair": [self.u, self.v], "mask": self.subset, "set": list(members(self.subset))}

    def __str__(self):
        return f"facet ({self.u},{self.v},{{{set_label(self.subset)}}})"


Tag = Union[EqApexPair, EqNonClique, IneqFacet]


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[tuple[int, int], ...]  # sorted (mask, coefficient), zero coefficients dropped
    tag: Tag

    @classmethod
    def build(cls, terms: Iterable[tuple[int, int]], tag: Tag) -> "LinearForm":
        acc: dict[int, int] = {}
        for s, c in terms:
            acc[s] = acc.get(s, 0) + c
        return cls(tuple(sorted((s, c) for s, c in acc.items() if c)), tag)

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def __call__(self, h: HeightLike) -> Fraction:
        return sum((c * h[s] for s, c in self.coeffs), Fraction(0))

    def dense(self, width: int) -> list[int]:
        row = [0] * width
        for s, c in self.coeffs:
            row[s] = c
        return row

    def render(self, relation: str) -> str:
        """``h_0 + h_1 >= h_∅ + h_01`` style, positive terms on the left."""

        def side(terms):
            parts = []
            for s, c in terms:
                a = abs(c)
                parts.append(("" if a == 1 else f"{a} ") + f"h_{set_label(s)}")
            return " + ".join(parts) if parts else "0"

        pos = [(s, c) for s, c in self.coeffs if c > 0]
        neg = [(s, c) for s, c in self.coeffs if c < 0]
        return f"{side(pos)} {relation} {side(neg)}"


def wall_form(u: int, v: int, s: int, tag: Tag) -> LinearForm:
    bu, bv = 1 << u, 1 << v
    return LinearForm.build([(s | bu, 1), (s | bv, 1), (s, -1), (s | bu | bv, -1)], tag)


def apex_form(n: int) -> LinearForm:
    return LinearForm.build([(0, 1), ((1 << n) - 1, 1)], EqApexPair())


def non_clique_form(subset: int, u: int, v: int) -> LinearForm:
    """h_{S-u} + h_{S-v} - h_S - h_{S-u-v}, which is n(u, v, S-u-v)."""
    return wall_form(u, v, subset & ~(1 << u) & ~(1 << v), EqNonClique(subset, u, v))


@dataclass(frozen=True)
class ConeDescription:
    n: int
    equations: tuple[LinearForm, ...]
    inequalities: tuple[LinearForm, ...]
    kind: str = "irredundant"

    def __post_init__(self):
        tags = [f.tag for f in self.equations] + [f.tag for f in self.inequalities]
        if len(set(tags)) != len(tags):
            raise ValueError("duplicate form tags")

    def without(self, tag: Tag) -> "ConeDescription":
        return ConeDescription(
            self.n,
            tuple(f for f in self.equations if f.tag != tag),
            tuple(f for f in self.inequalities if f.tag != tag),
            self.kind + "-minus-one",
        )


def _set_key(s: int) -> tuple[int, tuple[int, ...]]:
    return popcount(s), members(s)


def _subsets_avoiding(n: int, u: int, v: int) -> Iterator[int]:
    rest = ((1 << n) - 1) & ~(1 << u) & ~(1 << v)
    return subsets_of(rest)


def generate_redundant_description(g: Graph) -> ConeDescription:
    """Wall-crossing description over all pairs {u,v} and all S avoiding them."""
    check_size(g.n, MAX_DESCRIPTION_N, "cone description")
    eqs = []
    ineqs = []
    for u, v in combinations(range(g.n), 2):
        for s in _subsets_avoiding(g.n, u, v):
            if g.has_edge(u, v):
                ineqs.append(wall_form(u, v, s, IneqFacet(u, v, s)))
            else:
                eqs.append(non_clique_form(s | 1 << u | 1 << v, u, v))
    eqs.sort(key=lambda f: (_set_key(f.tag.subset), f.tag.u, f.tag.v))
    ineqs.sort(key=lambda f: (f.tag.u, f.tag.v, _set_key(f.tag.subset)))
    return ConeDescription(g.n, (apex_form(g.n), *eqs), tuple(ineqs), "redundant")


def smallest_non_edge(g: Graph, s: int) -> tuple[int, int] | None:
    for u, v in combinations(members(s), 2):
        if not g.has_edge(u, v):
            return u, v
    return None


def generate_irredundant_description(g: Graph) -> ConeDescription:
    """One equation per non-clique subset (lexicographically smallest non-edge), one
    inequality per edge {u,v} and S inside the common neighbourhood of u and v."""
    check_size(g.n, MAX_DESCRIPTION_N, "cone description")
    eqs = [apex_form(g.n)]
    for s in sorted(range(1 << g.n), key=_set_key):
        if popcount(s) < 2:
            continue
        pair = smallest_non_edge(g, s)
        if pair is not None:
            eqs.append(non_clique_form(s, *pair))
    ineqs = []
    adj = g.adjacency
    for u, v in g.edges:
        common = adj[u] & adj[v]
        for s in sorted(subsets_of(common), key=_set_key):
            ineqs.append(wall_form(u, v, s, IneqFacet(u, v, s)))
    return ConeDescription(g.n, tuple(eqs), tuple(ineqs), "irredundant")


# ---------------------------------------------------------------------------
# membership and numerology


@dataclass(frozen=True)
class MembershipResult:
    in_linear_span: bool
    in_cone: bool
    in_type_cone: bool
    violated: Tag | None = None  # first failing equation, else first negative inequality
    tight: Tag | None = None  # first inequality evaluating to exactly 0

    def to_json(self) -> dict:
        return {
            "in_linear_span": self.in_linear_span,
            "in_cone": self.in_cone,
            "in_type_cone": self.in_type_cone,
            "violated": self.violated.to_json() if self.violated else None,
            "tight": self.tight.to_json() if self.tight else None,
        }


def contains(desc: ConeDescription, h: HeightLike) -> MembershipResult:
    h = _heights(h)
    if len(h) != 1 << desc.n:
        raise ValueError(f"height vector has {len(h)} entries, expected {1 << desc.n}")
    for f in desc.equations:
        if f(h) != 0:
            return MembershipResult(False, False, False, f.tag)
    violated = tight = None
    for f in desc.inequalities:
        val = f(h)
        if val < 0 and violated is None:
            violated = f.tag
        elif val == 0 and tight is None:
            tight = f.tag
    in_cone = violated is None
    return MembershipResult(True, in_cone, in_cone and tight is None, violated, tight)


@dataclass(frozen=True)
class ConeStats:
    dim: int
    lineality: int
    facets: int
    simplicial: bool

    def to_json(self) -> dict:
        return {"dim": self.dim, "lineality": self.lineality, "facets": self.facets, "simplicial": self.simplicial}


def stats(g: Graph) -> ConeStats:
    check_size(g.n, MAX_DESCRIPTION_N, "cone statistics")
    adj = g.adjacency
    facets = sum(1 << popcount(adj[u] & adj[v]) for u, v in g.edges)
    return ConeStats(len(enumerate_induced_cliques(g)), g.n, facets, is_triangle_free(g))


# ---------------------------------------------------------------------------
# clique basis


def simplex_heights(n: int, k: int) -> HeightVector:
    """Support function of the simplex face Delta_K at every i_S."""
    return HeightVector(tuple(Fraction(1 if k & s else -1) for s in range(1 << n)))


def clique_basis_heights(g: Graph) -> dict[int, HeightVector]:
    return {k: simplex_heights(g.n, k) for k in enumerate_induced_cliques(g)}


def combine(n: int, coeffs: dict[int, Fraction]) -> HeightVector:
    """sum_K coeffs[K] * h(Delta_K)."""
    vals = [Fraction(0)] * (1 << n)
    for k, c in coeffs.items():
        if c:
            for s in range(1 << n):
                vals[s] += c if k & s else -c
    return HeightVector(tuple(vals))


def decompose_in_clique_basis(g: Graph, h: HeightLike) -> dict[int, Fraction]:
    """Coefficients y_K with h = sum_K y_K h(Delta_K) over the non-empty induced cliques."""
    h = _heights(h)
    desc = generate_irredundant_description(g)
    res = contains(desc, h)
    if not res.in_linear_span:
        raise NotInSpanError(res.violated)
    cliques = enumerate_induced_cliques(g)
    m = polyoracle.RationalMatrix([[1 if k & s else -1 for k in cliques] for s in range(1 << g.n)], len(cliques))
    y = polyoracle.solve(m, list(h))
    if isinstance(y, polyoracle.NoSolution):
        raise AssertionError("height vector satisfies every equation but is outside the clique span")
    return dict(zip(cliques, y))


def triangle_free_decompose(g: Graph, h: HeightLike) -> dict[tuple[int, int], Fraction]:
    """Edge-segment coefficients of a deformation of a triangle-free graphical zonotope."""
    if not is_triangle_free(g):
        raise GraphError("graph has a triangle; its deformations need not be zonotopes")
    h = _heights(h)
    res = contains(generate_irredundant_description(g), h)
    if not res.in_linear_span:
        raise NotInSpanError(res.violated)
    if not res.in_cone:
        raise NotInConeError(res.violated)
    y = decompose_in_clique_basis(g, h)
    lam = {(u, v): y[1 << u | 1 << v] for u, v in g.edges}
    bad = [e for e, c in lam.items() if c < 0]
    if bad:
        raise AssertionError(f"negative segment coefficient on {bad[0]} for a point of the cone")
    return lam


def translation_part(g: Graph, h: HeightLike) -> dict[int, Fraction]:
    """Singleton coefficients of the clique decomposition: the translation e = sum y_v e_v."""
    y = decompose_in_clique_basis(g, h)
    return {v: y[1 << v] for v in range(g.n)}


# ---------------------------------------------------------------------------
# facet witnesses


def triple_indicator(n: int, x: int, y: int, z: int) -> HeightVector:
    """t^{xyz}: 1 on subsets containing x, y and z."""
    m = 1 << x | 1 << y | 1 << z
    return HeightVector(tuple(Fraction(1 if s & m == m else 0) for s in range(1 << n)))


def cut_indicator(n: int, x: int, y: int) -> HeightVector:
    """c^{xy}: 1 on subsets separating x from y."""
    return HeightVector(tuple(Fraction((s >> x & 1) ^ (s >> y & 1)) for s in range(1 << n)))


def build_facet_witness(g: Graph, u: int, v: int, s: int, scale: int = 1, fix_apex: bool = True) -> HeightVector:
    """A point of the linear span strictly inside every facet inequality except n(u, v, s).

    w = t^S - t^T + (|S|/2) c^{uv} + sum of c^{ab} over the other edges, with T the
    rest of the common neighbourhood.  ``fix_apex`` subtracts a multiple of
    X -> |X|, which is orthogonal to every wall-crossing form, so that w also
    satisfies h_0 + h_V = 0.  ``scale=2`` gives the integer variant.
    """
    u, v = min(u, v), max(u, v)
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise GraphError(f"{{{u},{v}}} is not an edge")
    common = g.adjacency[u] & g.adjacency[v]
    if s & ~common:
        raise GraphError("subset is not inside the common neighbourhood of u and v")
    t = common & ~s
    n = g.n
    vals = [Fraction(0)] * (1 << n)
    half = Fraction(popcount(s), 2)
    uv = 1 << u | 1 << v
    for x in range(1 << n):
        w = Fraction(0)
        if x & uv == uv:
            w += popcount(x & s) - popcount(x & t)
        if popcount(x & uv) == 1:
            w += half
        for a, b in g.edges:
            if (a, b) != (u, v) and (x >> a & 1) != (x >> b & 1):
                w += 1
        vals[x] = w
    if fix_apex:
        shift = (vals[0] + vals[-1]) / n
        vals = [w - shift * popcount(x) for x, w in enumerate(vals)]
    return HeightVector(tuple(scale * w for w in vals))


@dataclass(frozen=True)
class WitnessCheck:
    designated: Fraction
    min_other_facet: Fraction | None
    max_abs_non_edge: Fraction
    ok: bool


def check_facet_witness(g: Graph, u: int, v: int, s: int, w: HeightLike) -> WitnessCheck:
    """Evaluate every clause of the witness system on ``w``, exactly."""
    w = _heights(w)
    u, v = min(u, v), max(u, v)
    designated = wall_form(u, v, s, IneqFacet(u, v, s))(w)
    others = []
    adj = g.adjacency
    for a, b in g.edges:
        for x in subsets_of(adj[a] & adj[b]):
            if (a, b, x) != (u, v, s):
                others.append(wall_form(a, b, x, IneqFacet(a, b, x))(w))
    worst_eq = Fraction(0)
    for a, b in g.non_edges():
        for x in _subsets_avoiding(g.n, a, b):
            worst_eq = max(worst_eq, abs(wall_form(a, b, x, IneqFacet(a, b, x))(w)))
    low = min(others) if others else None
    ok = designated <= 0 and (low is None or low > 0) and worst_eq == 0
    return WitnessCheck(designated, low, worst_eq, ok)


def facet_triples(g: Graph) -> list[tuple[int, int, int]]:
    adj = g.adjacency
    return [(u, v, s) for u, v in g.edges for s in sorted(subsets_of(adj[u] & adj[v]), key=_set_key)]


def is_non_clique_subset(g: Graph, s: int) -> bool:
    return popcount(s) >= 2 and not is_clique(g, s)
