"""Cross-check the closed-form cone description of a graph against the exact oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import polyoracle
from .defcone import (
    build_facet_witness,
    check_facet_witness,
    contains,
    facet_triples,
    generate_irredundant_description,
    generate_redundant_description,
    is_non_clique_subset,
    stats,
)
from .graphcore import Graph, all_graphs, check_size

MAX_CERTIFY_N = 5


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"check": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Certificate:
    graph: Graph
    checks: list[Check] = field(default_factory=list)
    facets_certified: int = 0
    facets_total: int = 0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict:
        return {
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]},
            "edge_bitmask": self.graph.edge_bitmask,
            "ok": self.ok,
            "facets_certified": self.facets_certified,
            "facets_total": self.facets_total,
            "checks": [c.to_json() for c in self.checks],
        }


def certify_graph(g: Graph, method: str = "lp") -> Certificate:
    """Run every check for one graph; never raises on a failed check."""
    cert = Certificate(g)
    add = cert.checks.append
    irr = generate_irredundant_description(g)
    red = generate_redundant_description(g)
    st = stats(g)
    width = 1 << g.n

    # counting
    n_noncliques = sum(1 for s in range(width) if is_non_clique_subset(g, s))
    add(Check("facet count", len(irr.inequalities) == st.facets, f"{len(irr.inequalities)} inequalities, stats {st.facets}"))
    add(Check("equation count", len(irr.equations) == 1 + n_noncliques, f"{len(irr.equations)} equations"))
    eq_rank = polyoracle.rank([f.dense(width) for f in irr.equations])
    add(Check(
        "equations independent",
        eq_rank == len(irr.equations) and eq_rank + st.dim == width,
        f"rank {eq_rank}, dim {st.dim}, 2^n {width}",
    ))

    cmp = polyoracle.cones_equal(red, irr)
    add(Check("redundant == irredundant", cmp.equal, cmp.reason))

    flags = polyoracle.facet_flags(irr, method=method) if irr.inequalities else []
    cert.facets_total = len(flags)
    cert.facets_certified = sum(flags)
    bad = [str(f.tag) for f, ok in zip(irr.inequalities, flags) if not ok]
    add(Check("every inequality is a facet", not bad, ", ".join(bad)))

    bad = []
    for u, v, s in facet_triples(g):
        w = build_facet_witness(g, u, v, s)
        res = check_facet_witness(g, u, v, s, w)
        if not (res.ok and contains(irr, w).in_linear_span):
            bad.append(f"({u},{v},{s})")
    add(Check("facet witnesses", not bad, ", ".join(bad)))
    return cert


def certify_all(n: int, method: str = "lp") -> list[Certificate]:
    check_size(n, MAX_CERTIFY_N, "exhaustive certification")
    return [certify_graph(g, method) for g in all_graphs(n)]
