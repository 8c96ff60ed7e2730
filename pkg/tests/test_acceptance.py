"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import json
import random
import re
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from graphdefcone.cli import main
from graphdefcone.defcone import (
    build_facet_witness,
    check_facet_witness,
    clique_basis_heights,
    combine,
    contains,
    decompose_in_clique_basis,
    facet_triples,
    generate_irredundant_description,
    generate_redundant_description,
    stats,
)
from graphdefcone.geometry import support_of_zonotope, vertex_of_orientation, vertices
from graphdefcone.graphcore import (
    Graph,
    all_graphs,
    chromatic_polynomial,
    enumerate_acyclic_orientations,
    enumerate_induced_cliques,
    evaluate_polynomial,
    is_triangle_free,
    mask_of,
    popcount,
)
from graphdefcone.polyoracle import SpanCone, cones_equal, extreme_rays, facet_flags, project_to_span, rank


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def run(number, title, limit=None):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0
            slow = limit is not None and dt >= limit
            status = "PASS" if ok and not slow else "FAIL"
            budget = f" / limit {limit:g} s" if limit is not None else ""
            with capsys.disabled():
                print(f"\n[acceptance {number:2d}] {status}  {title}  ({dt:.2f} s{budget})")
        assert not slow, f"took {dt:.2f} s, limit {limit} s"

    return run


def _describe(tmp_path, g, capsys):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"n": g.n, "edges": [list(e) for e in g.edges]}))
    assert main(["describe", str(p)]) == 0
    return json.loads(capsys.readouterr().out)


_TERM = re.compile(r"h_(\w+)")


def _form(text, relabel):
    """Parse 'h_12 + h_14 = h_124 + h_1' (h_e is the empty set) into {mask: coeff}, lhs minus rhs."""
    lhs, rhs = re.split(r">=|=", text)
    out = {}
    for side, sign in ((lhs, 1), (rhs, -1)):
        for label in _TERM.findall(side):
            mask = 0 if label == "e" else mask_of(relabel[int(c)] for c in label)
            out[mask] = out.get(mask, 0) + sign
    return {k: v for k, v in out.items() if v}


def _emitted(forms):
    return [{int(k): v for k, v in f["coeffs"].items()} for f in forms]


def _up_to_sign(f):
    return min(tuple(sorted(f.items())), tuple(sorted((k, -v) for k, v in f.items())))


# reference descriptions written with vertices 1..n
K3_EQUATIONS = ["h_e = -h_123"]
K3_INEQUALITIES = [
    "h_1 + h_2 >= h_e + h_12", "h_1 + h_3 >= h_e + h_13", "h_2 + h_3 >= h_e + h_23",
    "h_12 + h_13 >= h_1 + h_123", "h_12 + h_23 >= h_2 + h_123", "h_13 + h_23 >= h_3 + h_123",
]
C4_EQUATIONS = [
    "h_e = -h_1234", "h_12 + h_14 = h_124 + h_1",
    "h_1 + h_3 = h_13 + h_e", "h_12 + h_23 = h_123 + h_2",
    "h_2 + h_4 = h_24 + h_e", "h_23 + h_34 = h_234 + h_3",
    "h_123 + h_134 = h_1234 + h_13", "h_14 + h_34 = h_134 + h_4",
]
C4_INEQUALITIES = [
    "h_1 + h_2 >= h_12 + h_e", "h_2 + h_3 >= h_23 + h_e",
    "h_3 + h_4 >= h_34 + h_e", "h_1 + h_4 >= h_14 + h_e",
]


def _parse_all(eqs, ineqs, relabel):
    # 'h_e = -h_V' is read as h_e + h_V = 0
    parsed = [_form(t.replace("= -", "+ ") + " = " if "= -" in t else t, relabel) for t in eqs]
    return parsed, [_form(t, relabel) for t in ineqs]


def test_criterion_01_k3_golden(criterion, tmp_path, capsys):
    with criterion(1, "K_3 description: 1 equation, 6 inequalities, stats (7, 3, 6)", limit=1.0):
        d = _describe(tmp_path, Graph.complete(3), capsys)
        eqs, ineqs = _parse_all(K3_EQUATIONS, K3_INEQUALITIES, {1: 0, 2: 1, 3: 2})
        assert sorted(map(_up_to_sign, _emitted(d["equations"]))) == sorted(map(_up_to_sign, eqs))
        got = sorted(tuple(sorted(f.items())) for f in _emitted(d["inequalities"]))
        assert got == sorted(tuple(sorted(f.items())) for f in ineqs)
        assert (d["stats"]["dim"], d["stats"]["lineality"], d["stats"]["facets"]) == (7, 3, 6)


def test_criterion_02_c4_golden(criterion, tmp_path, capsys):
    with criterion(2, "C_4 description: 8 equations, 4 inequalities, stats (8, 4, 4, simplicial)", limit=1.0):
        d = _describe(tmp_path, Graph.cycle(4), capsys)
        # vertex 4 of the reference becomes 0; the edge set is that of Graph.cycle(4)
        eqs, ineqs = _parse_all(C4_EQUATIONS, C4_INEQUALITIES, {1: 1, 2: 2, 3: 3, 4: 0})
        assert sorted(map(_up_to_sign, _emitted(d["equations"]))) == sorted(map(_up_to_sign, eqs))
        got = sorted(tuple(sorted(f.items())) for f in _emitted(d["inequalities"]))
        assert got == sorted(tuple(sorted(f.items())) for f in ineqs)
        assert d["stats"] == {"dim": 8, "lineality": 4, "facets": 4, "simplicial": True}


def test_criterion_02_other_labeling_spans_same_equations(tmp_path, capsys):
    # with vertex i -> i - 1 the reference picks a different non-edge for S = V;
    # both choices cut out the same linear space
    d = _describe(tmp_path, Graph.cycle(4), capsys)
    eqs, _ = _parse_all(C4_EQUATIONS, C4_INEQUALITIES, {1: 0, 2: 1, 3: 2, 4: 3})
    ours = [[f.get(s, 0) for s in range(16)] for f in _emitted(d["equations"])]
    theirs = [[f.get(s, 0) for s in range(16)] for f in eqs]
    assert rank(ours) == rank(theirs) == rank(ours + theirs) == 8


def test_criterion_03_complete_graphs(criterion):
    with criterion(3, "K_n, n = 2..5: C(n,2) 2^(n-2) facets, dim 2^n - 1", limit=10.0):
        for n in range(2, 6):
            g = Graph.complete(n)
            irr = generate_irredundant_description(g)
            st = stats(g)
            expected = comb(n, 2) * 2 ** (n - 2)
            assert st.facets == len(irr.inequalities) == expected
            assert st.dim == 2**n - 1
            assert all(facet_flags(irr))
            assert cones_equal(generate_redundant_description(g), irr).equal


def test_criterion_04_oracle_equivalence(criterion):
    rng = random.Random(20240517)
    sample = sorted(rng.sample(range(1 << 10), 256))
    with criterion(4, "all 64 graphs on 4 vertices and 256 sampled on 5: redundant == irredundant, all facets", limit=300.0):
        graphs = list(all_graphs(4)) + [Graph.from_edge_bitmask(5, b) for b in sample]
        for g in graphs:
            irr = generate_irredundant_description(g)
            assert cones_equal(generate_redundant_description(g), irr).equal, g.edge_bitmask
            assert all(facet_flags(irr)), g.edge_bitmask


def test_criterion_05_witnesses(criterion):
    with criterion(5, "facet witnesses on every graph with <= 4 vertices", limit=60.0):
        count = 0
        for n in range(0, 5):
            for g in all_graphs(n):
                irr = generate_irredundant_description(g)
                for u, v, s in facet_triples(g):
                    w = build_facet_witness(g, u, v, s)
                    res = check_facet_witness(g, u, v, s, w)
                    assert res.ok and res.designated <= 0 and (res.min_other_facet is None or res.min_other_facet > 0)
                    assert res.max_abs_non_edge == 0
                    assert contains(irr, w).in_linear_span
                    count += 1
        assert count > 0


def test_criterion_06_basis_round_trip(criterion):
    with criterion(6, "zonotope decomposes as 1 on edges, 0 elsewhere (<= 4 vertices)"):
        for n in range(1, 5):
            for g in all_graphs(n):
                h = support_of_zonotope(g)
                y = decompose_in_clique_basis(g, h)
                edges = {1 << u | 1 << v for u, v in g.edges}
                assert y == {k: (1 if k in edges else 0) for k in enumerate_induced_cliques(g)}
                assert combine(n, y) == h


def test_criterion_07_simpliciality(criterion):
    with criterion(7, "simplicial == triangle-free == (#facets == pointed dim), <= 5 vertices", limit=120.0):
        for n in range(0, 6):
            for g in all_graphs(n):
                # facets and dimension from the wall-crossing description only
                sc = SpanCone.from_description(generate_redundant_description(g))
                rows = [r for r in sc.rows if any(r)]
                pointed_dim = rank(rows) if rows else 0
                n_facets = len(sc.facet_indices())
                tf = is_triangle_free(g)
                assert stats(g).simplicial == tf == (n_facets == pointed_dim), g.edge_bitmask


def _prufer_trees(n):
    if n == 1:
        yield Graph.empty(1)
        return
    if n == 2:
        yield Graph.path(2)
        return
    from itertools import product

    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if degree[v] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [w for w in range(n) if degree[w] == 1]
        edges.append((u, v))
        yield Graph.from_edges(n, edges)


def test_criterion_08_triangle_free_rays(criterion):
    with criterion(8, "paths, cycles, trees on <= 6 vertices: |E| rays, the edge segments"):
        graphs = [Graph.path(n) for n in range(1, 7)] + [Graph.cycle(n) for n in range(4, 7)]
        for n in range(1, 7):
            graphs += list(_prufer_trees(n))
        assert len(graphs) == 6 + 3 + sum(n ** (n - 2) if n > 1 else 1 for n in range(1, 7))
        for g in graphs:
            rep = project_to_span(g, generate_irredundant_description(g))
            rays = extreme_rays(rep)
            assert len(rays) == len(g.edges)
            assert rep.check_consistency()
            # coordinates are the cliques of size >= 2, here the edges
            edge_masks = sorted(1 << u | 1 << v for u, v in g.edges)
            assert sorted(rep.labels) == edge_masks
            found = set()
            for r in rays:
                nz = [i for i, c in enumerate(r) if c]
                assert len(nz) == 1 and r[nz[0]] > 0
                found.add(rep.labels[nz[0]])
            assert sorted(found) == edge_masks


def test_criterion_09_vertex_bijection(criterion):
    with criterion(9, "|vertices(Z_G)| == #acyclic orientations == |P(G, -1)|, <= 5 vertices", limit=60.0):
        for n in range(0, 6):
            for g in all_graphs(n):
                vs = vertices(g, support_of_zonotope(g))
                chrom = abs(evaluate_polynomial(chromatic_polynomial(g), -1))
                assert len(vs) == len(enumerate_acyclic_orientations(g)) == chrom, g.edge_bitmask


def _random_cone_point(rng, g, irr):
    """Clique combination, or a boundary point reached from an interior point along a random direction."""
    cliques = enumerate_induced_cliques(g)
    base = {k: Fraction(rng.randint(0, 4), rng.randint(1, 3)) if popcount(k) > 1 else Fraction(rng.randint(-5, 5)) for k in cliques}
    h = combine(g.n, base)
    if rng.random() < 0.5 or not irr.inequalities:
        return h
    interior = combine(g.n, {k: 1 for k in cliques}) + h
    d = combine(g.n, {k: Fraction(rng.randint(-6, 6)) for k in cliques})
    steps = [-f(interior) / f(d) for f in irr.inequalities if f(d) < 0]
    if not steps:
        return interior + d
    return interior + min(steps) * d


def test_criterion_10_sigma_independence(criterion):
    rng = random.Random(99)
    with criterion(10, "1000 random (graph, orientation, h): every linear extension gives the same vertex"):
        boundary = 0
        for _ in range(1000):
            n = rng.randint(1, 5)
            g = Graph.from_edge_bitmask(n, rng.randrange(1 << comb(n, 2)))
            irr = generate_irredundant_description(g)
            h = _random_cone_point(rng, g, irr)
            res = contains(irr, h)
            assert res.in_cone
            boundary += not res.in_type_cone
            omega = rng.choice(enumerate_acyclic_orientations(g))
            pts = {vertex_of_orientation(g, h, omega, order=ext, check=False) for ext in omega.linear_extensions()}
            assert len(pts) == 1
        assert boundary > 0
