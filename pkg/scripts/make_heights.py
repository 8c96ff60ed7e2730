"""Write a height-vector file for a graph: the zonotope itself or a random point of its cone."""

import argparse
import json
import random
from dataclasses import dataclass
from fractions import Fraction

from graphdefcone.defcone import combine
from graphdefcone.fileio import heights_to_json, read_graph
from graphdefcone.geometry import support_of_zonotope
from graphdefcone.graphcore import enumerate_induced_cliques, popcount


@dataclass
class Config:
    graph: str
    kind: str = "zonotope"
    seed: int = 0
    out: str | None = None


def heights(cfg: Config):
    g = read_graph(cfg.graph)
    if cfg.kind == "zonotope":
        return support_of_zonotope(g)
    rng = random.Random(cfg.seed)
    coeffs = {}
    for k in enumerate_induced_cliques(g):
        lo = -3 if popcount(k) == 1 else 0
        coeffs[k] = Fraction(rng.randint(lo, 3), rng.randint(1, 4))
    return combine(g.n, coeffs)


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("graph")
    p.add_argument("--kind", choices=("zonotope", "random"), default="zonotope")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    cfg = Config(**vars(p.parse_args()))
    text = json.dumps(heights_to_json(heights(cfg)), indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as f:
            f.write(text)
    else:
        print(text, end="")
