"""Certify the closed-form description for every labeled graph on up to N vertices."""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from graphdefcone.certify import MAX_CERTIFY_N, certify_all


@dataclass
class Config:
    max_n: int = 4
    method: str = "lp"
    out: str | None = None


def run(cfg: Config) -> dict:
    rows = []
    for n in range(cfg.max_n + 1):
        t0 = time.perf_counter()
        certs = certify_all(n, cfg.method)
        failed = [c.graph.edge_bitmask for c in certs if not c.ok]
        rows.append({
            "n": n,
            "graphs": len(certs),
            "failed": failed,
            "facets_certified": sum(c.facets_certified for c in certs),
            "seconds": round(time.perf_counter() - t0, 2),
        })
        print(f"n={n}: {len(certs) - len(failed)}/{len(certs)} graphs pass, "
              f"{rows[-1]['facets_certified']} facets certified in {rows[-1]['seconds']} s")
    return {"config": asdict(cfg), "rows": rows}


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=Config.max_n, choices=range(MAX_CERTIFY_N + 1))
    p.add_argument("--method", choices=("lp", "rays"), default=Config.method)
    p.add_argument("--out")
    cfg = Config(**vars(p.parse_args()))
    report = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as f:
            json.dump(report, f, indent=2)
