"""Extreme rays of the deformation cone modulo translations, for small graphs.

Counts rays by double description and splits them into simplex faces Delta_K
and the remaining rays, which are not positive combinations of simplex faces.
"""

import argparse
from collections import Counter
from dataclasses import dataclass

from graphdefcone.defcone import generate_irredundant_description
from graphdefcone.graphcore import all_graphs, is_triangle_free
from graphdefcone.polyoracle import MAX_RAY_DIM, OracleSizeError, extreme_rays, project_to_span


@dataclass
class Config:
    n: int = 4
    max_dim: int = MAX_RAY_DIM


def ray_profile(g, max_dim):
    rep = project_to_span(g, generate_irredundant_description(g))
    rays = extreme_rays(rep, max_dim=max_dim)
    unit = sum(1 for r in rays if sum(1 for c in r if c) == 1)
    return rep.dim, len(rep.facets), len(rays), unit


def main(cfg: Config):
    table = Counter()
    for g in all_graphs(cfg.n):
        try:
            dim, facets, rays, unit = ray_profile(g, cfg.max_dim)
        except OracleSizeError:
            table[("too large", len(g.edges), None, None, None, None)] += 1
            continue
        table[(is_triangle_free(g), len(g.edges), dim, facets, rays, unit)] += 1
    print("triangle_free edges dim facets rays simplex_rays  #graphs")
    for key, count in sorted(table.items(), key=lambda kv: str(kv[0])):
        print("  ".join(str(x) for x in key), f"  {count}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=Config.n)
    p.add_argument("--max-dim", type=int, default=Config.max_dim)
    main(Config(**vars(p.parse_args())))
