"""Exact polyhedral engine used to certify the closed-form cone descriptions.

Nothing here knows about the closed forms: it sees integer/rational rows,
eliminates with fraction-free (Bareiss) steps, decides cone membership with an
integer-preserving simplex (Bland's rule), and enumerates extreme rays by
double description.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Iterable, Sequence

from .graphcore import Graph, enumerate_induced_cliques, popcount

Number = int | Fraction

MAX_RAY_DIM = 16
MAX_RAY_FACETS = 128


class DescriptionError(ValueError):
    """A cone description is inconsistent with the span it claims to describe."""


class OracleSizeError(ValueError):
    pass


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def integer_row(row: Iterable[Number]) -> tuple[list[int], int]:
    """Scale ``row`` by the lcm of its denominators; returns (ints, scale)."""
    row = [Fraction(x) for x in row]
    den = reduce(_lcm, (x.denominator for x in row), 1)
    return [int(x * den) for x in row], den


def primitive(vec: Sequence[Number]) -> tuple[int, ...]:
    """Clear denominators and divide by the gcd; the direction is kept."""
    ints = list(vec) if all(type(x) is int for x in vec) else integer_row(vec)[0]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def sign_normalized(vec: Sequence[Number]) -> tuple[int, ...]:
    """Primitive vector with its first non-zero entry made positive (for lines, not rays)."""
    p = primitive(vec)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


def dot(a: Sequence[Number], b: Sequence[Number]) -> Number:
    return sum(x * y for x, y in zip(a, b))


class RationalMatrix:
    """Dense matrix of Fractions; rows may be given as ints or Fractions."""

    def __init__(self, rows: Iterable[Iterable[Number]], ncols: int | None = None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([[r[j] for r in self.rows] for j in range(self.ncols)], len(self.rows))

    def __matmul__(self, vec: Sequence[Number]) -> list[Fraction]:
        return [sum((x * y for x, y in zip(r, vec)), Fraction(0)) for r in self.rows]

    def __repr__(self):
        return f"RationalMatrix({len(self.rows)}x{self.ncols})"

    def rank(self) -> int:
        return rank(self)

    def solve(self, b: Sequence[Number]):
        return solve(self, b)

    def kernel(self) -> list[tuple[int, ...]]:
        return kernel(self)


def _as_matrix(m) -> RationalMatrix:
    return m if isinstance(m, RationalMatrix) else RationalMatrix(m)


def _bareiss(rows: list[list[int]], pivot_cols: int) -> list[int]:
    """Fraction-free row echelon form, in place; pivots chosen among the first ``pivot_cols`` columns."""
    m = len(rows)
    if not m:
        return []
    width = len(rows[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(pivot_cols):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        piv_row = rows[r]
        pv = piv_row[c]
        for i in range(r + 1, m):
            row = rows[i]
            a = row[c]
            for j in range(c + 1, width):
                q, rem = divmod(pv * row[j] - a * piv_row[j], prev)
                assert rem == 0, "non-exact Bareiss division"
                row[j] = q
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return pivots


def rank(m) -> int:
    m = _as_matrix(m)
    rows = [integer_row(r)[0] for r in m.rows]
    return len(_bareiss(rows, m.ncols))


@dataclass(frozen=True)
class NoSolution:
    """Inconsistent system; ``certificate`` y has y.M = 0 and y.b != 0."""

    certificate: tuple[Fraction, ...]

    def __bool__(self):
        return False


def solve(m, b: Sequence[Number]) -> list[Fraction] | NoSolution:
    """One exact solution of m.x = b (free variables set to 0), or NoSolution."""
    m = _as_matrix(m)
    nr, nc = m.shape
    if len(b) != nr:
        raise ValueError("right-hand side has the wrong length")
    aug = []
    scales = []
    for i, r in enumerate(m.rows):
        ints, s = integer_row(list(r) + [b[i]])
        aug.append(ints + [1 if j == i else 0 for j in range(nr)])
        scales.append(s)
    pivots = _bareiss(aug, nc)
    for i in range(len(pivots), nr):
        if aug[i][nc] != 0:
            y = tuple(Fraction(aug[i][nc + 1 + j] * scales[j]) for j in range(nr))
            return NoSolution(y)
    x = [Fraction(0)] * nc
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        row = aug[i]
        acc = Fraction(row[nc]) - sum(row[j] * x[j] for j in range(c + 1, nc))
        x[c] = acc / row[c]
    return x


def _rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    rows = [integer_row(r)[0] for r in m.rows]
    pivots = _bareiss(rows, m.ncols)
    red = [[Fraction(x) for x in rows[i]] for i in range(len(pivots))]
    for i in reversed(range(len(pivots))):
        c = pivots[i]
        pv = red[i][c]
        red[i] = [x / pv for x in red[i]]
        for k in range(i):
            f = red[k][c]
            if f:
                red[k] = [x - f * y for x, y in zip(red[k], red[i])]
    return red, pivots


def kernel(m) -> list[tuple[int, ...]]:
    """Integer basis of {x : m.x = 0}, one vector per free column."""
    m = _as_matrix(m)
    red, pivots = _rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivot_set:
            continue
        x = [Fraction(0)] * m.ncols
        x[f] = Fraction(1)
        for i, c in enumerate(pivots):
            x[c] = -red[i][f]
        basis.append(primitive(x))
    return basis


def row_basis(rows: Sequence[Sequence[Number]]) -> list[int]:
    """Indices of a greedy maximal independent subset of ``rows``, in order."""
    chosen: list[int] = []
    ech: list[list[int]] = []
    for i, r in enumerate(rows):
        trial = [list(x) for x in ech] + [integer_row(r)[0]]
        if len(_bareiss([list(x) for x in trial], len(r))) > len(ech):
            chosen.append(i)
            ech = trial
    return chosen


# ---------------------------------------------------------------------------
# integer-preserving simplex


def cone_membership(gens: Sequence[Sequence[int]], target: Sequence[int]):
    """Decide whether ``target`` is a nonnegative combination of ``gens``.

    Returns ``(True, lam)`` with ``sum lam[i] * gens[i] == target`` and lam >= 0,
    or ``(False, z)`` with ``gens[i] . z >= 0`` for all i and ``target . z < 0``
    (Farkas).  Both certificates are exact and re-checked before returning.
    """
    d = len(target)
    k = len(gens)
    if any(len(g) != d for g in gens):
        raise ValueError("generator length mismatch")
    if d == 0:
        return True, [Fraction(0)] * k
    signs = [1 if t >= 0 else -1 for t in target]
    # constraint rows: signs[i] * (A | I | b), A[:, j] = gens[j]
    width = k + d + 1
    rows = []
    for i in range(d):
        s = signs[i]
        row = [s * gens[j][i] for j in range(k)] + [0] * d + [s * target[i]]
        row[k + i] = 1
        rows.append(row)
    obj = [0] * width
    for row in rows:
        for j in range(k):
            obj[j] -= row[j]
        obj[-1] -= row[-1]
    basis = [k + i for i in range(d)]
    D = 1
    while True:
        enter = next((j for j in range(k + d) if obj[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i in range(d):
            a = rows[i][enter]
            if a <= 0:
                continue
            if leave is None:
                leave = i
                continue
            # compare rows[i][-1]/a against rows[leave][-1]/rows[leave][enter]
            lhs = rows[i][-1] * rows[leave][enter]
            rhs = rows[leave][-1] * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                leave = i
        if leave is None:
            raise AssertionError("phase-one objective is bounded below by 0")
        pr = rows[leave]
        p = pr[enter]
        for i in range(d + 1):
            if i == leave:
                continue
            row = rows[i] if i < d else obj
            a = row[enter]
            if a == 0:
                for j in range(width):
                    row[j] = row[j] * p // D
            else:
                for j in range(width):
                    row[j] = (p * row[j] - a * pr[j]) // D
        D = p
        basis[leave] = enter
    if obj[-1] == 0:
        lam = [Fraction(0)] * k
        for i, b in enumerate(basis):
            if b < k:
                lam[b] = Fraction(rows[i][-1], D)
        for i in range(d):
            assert sum(lam[j] * gens[j][i] for j in range(k)) == target[i]
        return True, lam
    # dual of the optimal phase-one basis: y_i = 1 - reduced cost of artificial i
    z = [-signs[i] * (D - obj[k + i]) for i in range(d)]
    g = reduce(gcd, z, 0) or 1
    z = [x // g for x in z]
    assert all(dot(gen, z) >= 0 for gen in gens) and dot(target, z) < 0
    return False, z


# ---------------------------------------------------------------------------
# cones given by inequality rows


def pointed_section(rows: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[int]]:
    """Rewrite {z : rows.z >= 0} modulo its lineality as a full-dimensional pointed cone.

    Picks independent rows Q; each row becomes its coefficient vector over Q, so
    the returned rows live in R^rank and define a pointed cone.  Also returns the
    chosen row indices.
    """
    if not rows:
        return [], []
    chosen = row_basis(rows)
    out = []
    for r in rows:
        c = section_coordinates(rows, chosen, r)
        assert c is not None
        out.append(c)
    return out, chosen


def section_coordinates(rows, chosen: list[int], a: Sequence[int]) -> tuple[int, ...] | None:
    """Coefficients of ``a`` over the rows ``chosen`` (scaled to a primitive vector), or None."""
    q = RationalMatrix([rows[i] for i in chosen]).transpose()
    c = solve(q, a)
    if isinstance(c, NoSolution):
        return None
    return primitive(c) if any(c) else tuple(0 for _ in c)


def double_description(rows: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {y in R^dim : rows.y >= 0}, rows processed in order."""
    rows = [tuple(r) for r in rows]
    if dim == 0:
        return []
    init = row_basis(rows)
    if len(init) != dim:
        raise DescriptionError(f"cone is not pointed: row rank {len(init)} < dim {dim}")
    m0 = RationalMatrix([rows[i] for i in init])
    rays: list[tuple[tuple[int, ...], int]] = []  # (ray, zero-set bitmask over row indices)
    for j in range(dim):
        e = [1 if i == j else 0 for i in range(dim)]
        col = solve(m0, e)
        assert not isinstance(col, NoSolution)
        r = primitive(col)
        zero = 0
        for idx, i in enumerate(init):
            if idx != j:
                zero |= 1 << i
        rays.append((r, zero))
    done = set(init)
    processed = 0
    for i in init:
        processed |= 1 << i
    for i, a in enumerate(rows):
        if i in done:
            continue
        vals = [dot(a, r) for r, _ in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        zer = [t for t, v in enumerate(vals) if v == 0]
        new = [(rays[t][0], rays[t][1] | 1 << i) for t in zer] + [rays[t] for t in pos]
        for p in pos:
            zp = rays[p][1]
            for q in neg:
                common = zp & rays[q][1]
                if popcount(common) < dim - 2:
                    continue
                if any(t != p and t != q and rays[t][1] & common == common for t in range(len(rays))):
                    continue
                vp, vq = vals[p], vals[q]
                comb = [vp * x - vq * y for x, y in zip(rays[q][0], rays[p][0])]
                new.append((primitive(comb), common | 1 << i))
        rays = new
        processed |= 1 << i
    return sorted(r for r, _ in rays)


@dataclass
class PointedConeRep:
    """Pointed cone {y : facets.y >= 0} in R^dim.

    ``facets`` are the inequality normals as given (facets proper once the
    description is irredundant); ``rays`` is filled by :func:`extreme_rays`.
    """

    dim: int
    facets: list[tuple[int, ...]]
    tags: list[Any] = field(default_factory=list)
    labels: list[int] = field(default_factory=list)  # clique mask per coordinate, if known
    rays: list[tuple[int, ...]] | None = None

    def check_consistency(self) -> bool:
        """Every ray satisfies every facet; every facet is tight on dim-1 independent rays."""
        if self.rays is None:
            raise ValueError("rays not computed")
        if any(dot(f, r) < 0 for f in self.facets for r in self.rays):
            return False
        for f in self.facets:
            tight = [r for r in self.rays if dot(f, r) == 0]
            if (rank(tight) if tight else 0) < self.dim - 1:
                return False
        return True


def extreme_rays(c: PointedConeRep, max_dim: int = MAX_RAY_DIM, max_facets: int = MAX_RAY_FACETS) -> list[tuple[int, ...]]:
    if c.dim > max_dim or len(c.facets) > max_facets:
        raise OracleSizeError(f"ray enumeration limited to dim <= {max_dim} and <= {max_facets} facets")
    if c.rays is None:
        c.rays = double_description(c.facets, c.dim)
    return c.rays


def _dense(form, width: int) -> list[int]:
    coeffs = getattr(form, "coeffs", None)
    if coeffs is None:
        row = list(form)
        if len(row) != width:
            raise ValueError("form length mismatch")
        return row
    row = [0] * width
    for s, c in (coeffs.items() if isinstance(coeffs, dict) else coeffs):
        row[s] += c
    return row


def _sparse(form, width: int) -> list[tuple[int, int]]:
    coeffs = getattr(form, "coeffs", None)
    if coeffs is None:
        return [(s, c) for s, c in enumerate(_dense(form, width)) if c]
    return list(coeffs.items() if isinstance(coeffs, dict) else coeffs)


def _split(desc) -> tuple[list, list]:
    if hasattr(desc, "equations"):
        return list(desc.equations), list(desc.inequalities)
    eqs, ineqs = desc
    return list(eqs), list(ineqs)


def _width(desc, default: int | None = None) -> int:
    n = getattr(desc, "n", None)
    if n is not None:
        return 1 << n
    eqs, ineqs = _split(desc)
    for f in eqs + ineqs:
        if getattr(f, "coeffs", None) is None:
            return len(f)
    if default is None:
        raise ValueError("cannot infer ambient dimension")
    return default


def _tag(form, i: int):
    return getattr(form, "tag", i)


def clique_heights(g: Graph, k: int) -> list[int]:
    """h_S of the simplex face on clique k: +1 if k meets S, else -1."""
    return [1 if k & s else -1 for s in range(1 << g.n)]


def project_to_span(g: Graph, desc) -> PointedConeRep:
    """Inequalities of ``desc`` in clique-basis coordinates, translations quotiented out."""
    eqs, ineqs = _split(desc)
    width = 1 << g.n
    cliques = enumerate_induced_cliques(g)
    cols = {k: clique_heights(g, k) for k in cliques}
    eq_rows = [_dense(f, width) for f in eqs]
    for f, row in zip(eqs, eq_rows):
        for k, col in cols.items():
            if dot(row, col) != 0:
                raise DescriptionError(f"equation {_tag(f, 0)} does not vanish on the simplex face {k}")
    if width - (rank(eq_rows) if eq_rows else 0) != len(cliques):
        raise DescriptionError("equations do not cut out the clique span")
    big = [k for k in cliques if popcount(k) >= 2]
    normals = []
    for i, f in enumerate(ineqs):
        row = _dense(f, width)
        for k in cliques:
            if popcount(k) == 1 and dot(row, cols[k]) != 0:
                raise DescriptionError(f"inequality {_tag(f, i)} is not translation invariant")
        normals.append(tuple(dot(row, cols[k]) for k in big))
    return PointedConeRep(len(big), normals, [_tag(f, i) for i, f in enumerate(ineqs)], big)


def lift_from_span(g: Graph, labels: Sequence[int], y: Sequence[Number]) -> list[Fraction]:
    """Height vector sum_K y_K * h(Delta_K) for the clique masks ``labels``."""
    h = [Fraction(0)] * (1 << g.n)
    for k, c in zip(labels, y):
        if c:
            col = clique_heights(g, k)
            for s in range(len(h)):
                h[s] += c * col[s]
    return h


@dataclass
class SpanCone:
    """A description rewritten in coordinates of an integer kernel basis of its equations."""

    width: int
    basis: list[tuple[int, ...]]  # columns spanning the solution space of the equations
    rows: list[tuple[int, ...]]  # primitive projected inequality normals
    tags: list[Any]

    @classmethod
    def from_description(cls, desc, basis=None) -> "SpanCone":
        eqs, ineqs = _split(desc)
        width = _width(desc)
        if basis is None:
            eq_rows = [_dense(f, width) for f in eqs]
            basis = kernel(RationalMatrix(eq_rows, width)) if eq_rows else [
                tuple(1 if i == j else 0 for i in range(width)) for j in range(width)
            ]
        rows = [cls._project(f, width, basis) for f in ineqs]
        return cls(width, basis, rows, [_tag(f, i) for i, f in enumerate(ineqs)])

    @staticmethod
    def _project(form, width: int, basis) -> tuple[int, ...]:
        terms = _sparse(form, width)
        return primitive([sum(c * b[s] for s, c in terms) for b in basis])

    def project(self, form) -> tuple[int, ...]:
        return self._project(form, self.width, self.basis)

    def lift(self, z: Sequence[Number]) -> list[Fraction]:
        h = [Fraction(0)] * self.width
        for c, b in zip(z, self.basis):
            if c:
                for s in range(self.width):
                    h[s] += c * b[s]
        return h

    def implies(self, a: Sequence[int], exclude: int | None = None):
        """Is a.z >= 0 implied by the rows (optionally all but those parallel to row ``exclude``)?"""
        a = primitive(a)
        if exclude is None:
            gens = self.rows
        else:
            gens = [r for r in self.rows if r != self.rows[exclude]]
        if not any(a):
            return True, None
        if exclude is None and a in gens:
            return True, None
        return cone_membership(gens, a)

    def facet_indices(self) -> list[int]:
        """Indices of rows defining facets, one per class of parallel rows (first occurrence)."""
        out = []
        seen = set()
        for i, r in enumerate(self.rows):
            if r in seen or not any(r):
                continue
            seen.add(r)
            if not self.implies(r, exclude=i)[0]:
                out.append(i)
        return out


@dataclass
class ConeComparison:
    equal: bool
    reason: str = ""
    failing_tag: Any = None
    witness: list[Fraction] | None = None  # ambient point separating the two cones
    checks: int = 0  # number of LP certificates computed
    facet_matching: list[tuple[list, list]] | None = None

    def __bool__(self):
        return self.equal


def cones_equal(a, b, match_facets: bool = False) -> ConeComparison:
    """Exact equality of two cones, each (equations, inequalities) over the same space."""
    wa, wb = _width(a), _width(b)
    if wa != wb:
        raise ValueError("descriptions live in different spaces")
    ea = [_dense(f, wa) for f in _split(a)[0]]
    eb = [_dense(f, wa) for f in _split(b)[0]]
    ra = rank(RationalMatrix(ea, wa)) if ea else 0
    rb = rank(RationalMatrix(eb, wa)) if eb else 0
    rab = rank(RationalMatrix(ea + eb, wa)) if ea or eb else 0
    if not ra == rb == rab:
        # a point of one span off the other
        small, big, tags = (ea, eb, _split(b)[0]) if rab > ra else (eb, ea, _split(a)[0])
        ker = kernel(RationalMatrix(small, wa)) if small else [tuple(1 if i == j else 0 for i in range(wa)) for j in range(wa)]
        for v in ker:
            for f, row in zip(tags, big):
                if dot(row, v) != 0:
                    return ConeComparison(False, "linear spans differ", _tag(f, 0), [Fraction(x) for x in v])
        raise AssertionError("rank mismatch without separating kernel vector")
    ca = SpanCone.from_description(a)
    cb = SpanCone.from_description(b, basis=ca.basis)
    checks = 0
    for this, other, label in ((ca, cb, "b"), (cb, ca, "a")):
        other_rows = set(other.rows)
        for i, r in enumerate(this.rows):
            if r in other_rows or not any(r):
                continue
            checks += 1
            ok, cert = other.implies(r)
            if not ok:
                return ConeComparison(
                    False,
                    f"inequality not implied by description {label}",
                    this.tags[i],
                    ca.lift(cert),
                    checks,
                )
    result = ConeComparison(True, "", None, None, checks)
    if match_facets:
        fa = ca.facet_indices()
        fb = cb.facet_indices()
        matching = []
        for i in fa:
            ta = [ca.tags[j] for j, r in enumerate(ca.rows) if r == ca.rows[i]]
            tb = [cb.tags[j] for j, r in enumerate(cb.rows) if r == ca.rows[i]]
            matching.append((ta, tb))
        if len(fa) != len(fb) or any(not tb for _, tb in matching):
            raise AssertionError("equal cones with unmatched facets")
        result.facet_matching = matching
    return result


def is_facet(desc, form, method: str = "lp", span: SpanCone | None = None) -> bool:
    """Does ``form >= 0`` define a facet of the cone described by ``desc``?

    ``method="lp"``: the form is valid and not implied by the inequalities that
    are not parallel to it (the cone must be full-dimensional in its span, which
    holds for deformation cones).  ``method="rays"``: the extreme rays of a
    pointed section on which the form vanishes have rank dim - 1.  Pass
    ``span`` to reuse the projection of ``desc`` across calls.
    """
    sc = span if span is not None else SpanCone.from_description(desc)
    a = sc.project(form)
    if not any(a):
        return False
    if method == "lp":
        if not sc.implies(a)[0]:
            return False
        others = [r for r in sc.rows if r != a]
        if not others:
            return True
        return not cone_membership(others, a)[0]
    if method == "rays":
        if not sc.rows:
            return False
        section, chosen = pointed_section(sc.rows)
        dim = len(chosen)
        if dim > MAX_RAY_DIM:
            raise OracleSizeError("pointed section too large for ray enumeration")
        fa = section_coordinates(sc.rows, chosen, a)
        if fa is None:
            return False  # not constant along the lineality, so not valid
        rays = double_description(section, dim)
        if any(dot(fa, r) < 0 for r in rays):
            return False
        tight = [r for r in rays if dot(fa, r) == 0]
        return (rank(tight) if tight else 0) == dim - 1
    raise ValueError(f"unknown method {method!r}")


def facet_flags(desc, method: str = "lp") -> list[bool]:
    """is_facet for every inequality of ``desc``, sharing one projection."""
    _, ineqs = _split(desc)
    sc = SpanCone.from_description(desc)
    return [is_facet(desc, f, method, span=sc) for f in ineqs]
