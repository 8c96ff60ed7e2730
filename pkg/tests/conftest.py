from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from graphdefcone.defcone import clique_basis_heights, combine
from graphdefcone.graphcore import Graph, enumerate_induced_cliques, popcount

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=0, max_n=5):
    n = draw(st.integers(min_n, max_n))
    m = n * (n - 1) // 2
    bits = draw(st.integers(0, (1 << m) - 1)) if m else 0
    return Graph.from_edge_bitmask(n, bits)


@st.composite
def cone_points(draw, g):
    """Nonnegative combination of simplex faces on cliques of size >= 2, plus a translation."""
    coeffs = {}
    for k in enumerate_induced_cliques(g):
        if popcount(k) == 1:
            coeffs[k] = Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 3)))
        else:
            coeffs[k] = Fraction(draw(st.integers(0, 4)), draw(st.integers(1, 3)))
    return combine(g.n, coeffs)


def interior_point(g):
    """A point of the open cone: every simplex face with weight one."""
    return combine(g.n, {k: Fraction(1) for k in clique_basis_heights(g)})
