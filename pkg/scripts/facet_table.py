"""Dimension, lineality and facet counts for standard graph families."""

import argparse
from dataclasses import dataclass

from graphdefcone.defcone import stats
from graphdefcone.graphcore import Graph


@dataclass
class Config:
    max_n: int = 8


FAMILIES = {
    "complete": Graph.complete,
    "cycle": lambda n: Graph.cycle(n) if n >= 3 else None,
    "path": Graph.path,
    "empty": Graph.empty,
}


def main(cfg: Config):
    print(f"{'family':<10}{'n':>3}{'dim':>7}{'lin':>5}{'facets':>9}  simplicial")
    for name, make in FAMILIES.items():
        for n in range(1, cfg.max_n + 1):
            g = make(n)
            if g is None:
                continue
            s = stats(g)
            print(f"{name:<10}{n:>3}{s.dim:>7}{s.lineality:>5}{s.facets:>9}  {s.simplicial}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    main(Config(**vars(p.parse_args())))
