from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from conftest import graphs
from graphdefcone.graphcore import (
    Graph,
    GraphError,
    Orientation,
    SizeGuardError,
    all_graphs,
    chromatic_polynomial,
    connected_components,
    enumerate_acyclic_orientations,
    enumerate_induced_cliques,
    evaluate_polynomial,
    is_biconnected_subset,
    is_clique,
    is_connected_subset,
    is_triangle_free,
    mask_of,
    members,
    neighborhood,
    subsets_of,
)


def test_bitmask_helpers():
    assert mask_of([0, 2]) == 5
    assert members(13) == (0, 2, 3)
    assert list(subsets_of(5)) == [0, 1, 4, 5]


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 1), (1, 0)])
    assert Graph.from_edges(3, [(2, 0)]).edges == ((0, 2),)


def test_edge_bitmask_roundtrip():
    for g in all_graphs(4):
        assert Graph.from_edge_bitmask(4, g.edge_bitmask) == g
    assert sum(1 for _ in all_graphs(4)) == 64


def test_neighborhood():
    c4 = Graph.cycle(4)
    assert neighborhood(c4, 0) == mask_of([1, 3])
    with pytest.raises(ValueError):
        neighborhood(c4, 4)


def test_cliques_examples():
    assert enumerate_induced_cliques(Graph.complete(3)) == [1, 2, 3, 4, 5, 6, 7]
    c4 = enumerate_induced_cliques(Graph.cycle(4))
    assert len(c4) == 8 and sorted(map(len, map(members, c4))) == [1] * 4 + [2] * 4
    assert enumerate_induced_cliques(Graph.empty(3)) == [1, 2, 4]
    assert len(enumerate_induced_cliques(Graph.complete(5))) == 31


@given(graphs(max_n=6))
def test_cliques_match_brute_force_and_are_down_closed(g):
    brute = [s for s in range(1, 1 << g.n) if all(g.has_edge(u, v) for u, v in combinations(members(s), 2))]
    cl = enumerate_induced_cliques(g)
    assert cl == brute
    cs = set(cl)
    for k in cl:
        assert all(t in cs for t in subsets_of(k) if t)


def test_triangle_free():
    assert not is_triangle_free(Graph.complete(3))
    assert is_triangle_free(Graph.cycle(4))
    assert is_triangle_free(Graph.path(5))


def test_acyclic_orientations_k3():
    os = enumerate_acyclic_orientations(Graph.complete(3))
    assert len(os) == 6
    assert len({o.arcs for o in os}) == 6


def _brute_acyclic(g):
    count = 0
    for dirs in product((0, 1), repeat=len(g.edges)):
        arcs = tuple((u, v) if d else (v, u) for (u, v), d in zip(g.edges, dirs))
        try:
            Orientation(g.n, arcs)
        except GraphError:
            continue
        count += 1
    return count


@pytest.mark.parametrize("n", range(0, 6))
def test_acyclic_count_equals_chromatic_at_minus_one(n):
    for g in all_graphs(n):
        p = chromatic_polynomial(g)
        assert len(enumerate_acyclic_orientations(g)) == abs(evaluate_polynomial(p, -1))


@given(graphs(max_n=5))
def test_acyclic_orientations_match_brute_force(g):
    assert len(enumerate_acyclic_orientations(g)) == _brute_acyclic(g)


def test_chromatic_polynomial_known():
    # K_3: x(x-1)(x-2) = x^3 - 3x^2 + 2x
    assert chromatic_polynomial(Graph.complete(3)) == [0, 2, -3, 1]
    # C_4: (x-1)^4 + (x-1)
    p = chromatic_polynomial(Graph.cycle(4))
    assert all(evaluate_polynomial(p, x) == (x - 1) ** 4 + (x - 1) for x in range(6))


@given(graphs(max_n=5), st.integers(0, 4))
def test_chromatic_counts_colorings(g, k):
    brute = sum(1 for col in product(range(k), repeat=g.n) if all(col[u] != col[v] for u, v in g.edges))
    assert evaluate_polynomial(chromatic_polynomial(g), k) == brute


def test_orientation_rejects_cycle():
    with pytest.raises(GraphError):
        Orientation(3, ((0, 1), (1, 2), (2, 0)))


@given(graphs(min_n=1, max_n=5), st.data())
def test_upper_sets_and_linear_extensions(g, data):
    os = enumerate_acyclic_orientations(g)
    o = data.draw(st.sampled_from(os))
    ups = o.upper_sets()
    assert ups == [s for s in range(1 << g.n) if o.is_upper_set(s)]
    for a, b in o.arcs:
        assert all(not (s >> a & 1) or s >> b & 1 for s in ups)
    ext = list(o.linear_extensions())
    assert o.linear_extension() in ext
    for order in ext:
        pos = {v: i for i, v in enumerate(order)}
        assert all(pos[a] < pos[b] for a, b in o.arcs)


def test_connectivity_predicates():
    p4 = Graph.path(4)
    assert is_connected_subset(p4, mask_of([1, 2]))
    assert not is_connected_subset(p4, mask_of([0, 2]))
    assert connected_components(Graph.from_edges(4, [(0, 1)])) == [3, 4, 8]
    # in a path, biconnected subsets are the proper prefixes and suffixes
    bic = [s for s in range(1, 16) if is_biconnected_subset(p4, s)]
    assert sorted(bic) == sorted([1, 3, 7, 8, 12, 14])


def test_is_clique():
    g = Graph.cycle(4)
    assert is_clique(g, mask_of([0, 1]))
    assert not is_clique(g, mask_of([0, 2]))


def test_size_guard():
    with pytest.raises(SizeGuardError):
        enumerate_acyclic_orientations(Graph.empty(17))
