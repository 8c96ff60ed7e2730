"""Command line: describe, check, decompose, vertices, verify.

Exit codes: 0 success (or membership true), 1 membership false,
2 input error, 3 certification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import certify, defcone, geometry
from .fileio import (
    InputError,
    description_to_json,
    description_to_text,
    read_graph,
    read_heights,
)
from .graphcore import GraphError, SizeGuardError, is_triangle_free, members

EXIT_OK = 0
EXIT_NOT_MEMBER = 1
EXIT_INPUT = 2
EXIT_CERTIFICATION = 3


@dataclass
class RunConfig:
    command: str
    graph: str | None = None
    heights: str | None = None
    output: str | None = None
    format: str = "json"
    redundant: bool = False
    zonotopal: bool = False
    all_n: int | None = None
    off: bool = False


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _set_key(mask: int) -> str:
    return json.dumps(list(members(mask)))


def cmd_describe(cfg: RunConfig) -> tuple[int, str]:
    g = read_graph(cfg.graph)
    desc = defcone.generate_redundant_description(g) if cfg.redundant else defcone.generate_irredundant_description(g)
    st = defcone.stats(g)
    if cfg.format == "text":
        return EXIT_OK, description_to_text(g, desc, st)
    return EXIT_OK, _dump(description_to_json(g, desc, st))


def cmd_check(cfg: RunConfig) -> tuple[int, str]:
    g = read_graph(cfg.graph)
    h = read_heights(cfg.heights, g.n)
    res = defcone.contains(defcone.generate_irredundant_description(g), h)
    code = EXIT_OK if res.in_cone else EXIT_NOT_MEMBER
    if cfg.format == "text":
        lines = [
            f"in_linear_span: {str(res.in_linear_span).lower()}",
            f"in_cone: {str(res.in_cone).lower()}",
            f"in_type_cone: {str(res.in_type_cone).lower()}",
        ]
        if res.violated is not None:
            lines.append(f"violated: {res.violated}")
        if res.tight is not None:
            lines.append(f"tight: {res.tight}")
        return code, "\n".join(lines) + "\n"
    return code, _dump(res.to_json())


def cmd_decompose(cfg: RunConfig) -> tuple[int, str]:
    g = read_graph(cfg.graph)
    h = read_heights(cfg.heights, g.n)
    desc = defcone.generate_irredundant_description(g)
    res = defcone.contains(desc, h)
    if not res.in_linear_span:
        msg = f"not in the linear span: violates {res.violated}\n"
        return EXIT_NOT_MEMBER, msg if cfg.format == "text" else _dump({"error": "not in linear span", "violated": res.violated.to_json()})
    if cfg.zonotopal:
        if not g.edges or not is_triangle_free(g):
            raise InputError("--zonotopal needs a triangle-free graph")
        if not res.in_cone:
            msg = f"not in the cone: violates {res.violated}\n"
            return EXIT_NOT_MEMBER, msg if cfg.format == "text" else _dump({"error": "not in cone", "violated": res.violated.to_json()})
        lam = defcone.triangle_free_decompose(g, h)
        trans = defcone.translation_part(g, h)
        if cfg.format == "text":
            lines = [f"edge {u}-{v}: {c}" for (u, v), c in sorted(lam.items())]
            lines += [f"translation {v}: {c}" for v, c in sorted(trans.items())]
            return EXIT_OK, "\n".join(lines) + "\n"
        return EXIT_OK, _dump({
            "edges": [{"edge": [u, v], "coeff": str(c)} for (u, v), c in sorted(lam.items())],
            "translation": {str(v): str(c) for v, c in sorted(trans.items())},
        })
    y = defcone.decompose_in_clique_basis(g, h)
    ordered = sorted(y.items(), key=lambda kc: (bin(kc[0]).count("1"), members(kc[0])))
    if cfg.format == "text":
        return EXIT_OK, "".join(f"{list(members(k))}: {c}\n" for k, c in ordered)
    return EXIT_OK, _dump({"coefficients": {_set_key(k): str(c) for k, c in ordered}})


def cmd_vertices(cfg: RunConfig) -> tuple[int, str]:
    g = read_graph(cfg.graph)
    if cfg.heights is None:
        h = geometry.support_of_zonotope(g)
    else:
        h = read_heights(cfg.heights, g.n)
    res = defcone.contains(defcone.generate_irredundant_description(g), h)
    if not res.in_cone:
        raise InputError(f"heights are not in the deformation cone: violates {res.violated}")
    vs = geometry.vertices(g, h, check=False)
    if cfg.off:
        return EXIT_OK, vs.to_off()
    if cfg.format == "text":
        lines = [f"vertices: {len(vs)}", f"acyclic orientations: {vs.orientations}"]
        lines += ["  (" + ", ".join(str(c) for c in p) + ")" for p in vs.points]
        return EXIT_OK, "\n".join(lines) + "\n"
    return EXIT_OK, _dump(vs.to_json())


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    if cfg.all_n is not None:
        if not 0 <= cfg.all_n <= certify.MAX_CERTIFY_N:
            raise InputError(f"--all-n must be between 0 and {certify.MAX_CERTIFY_N}")
        certs = certify.certify_all(cfg.all_n)
    else:
        certs = [certify.certify_graph(read_graph(cfg.graph))]
    failed = [c for c in certs if not c.ok]
    code = EXIT_CERTIFICATION if failed else EXIT_OK
    if cfg.format == "text":
        lines = []
        for c in certs:
            status = "ok" if c.ok else "FAIL"
            lines.append(
                f"graph {c.graph.edge_bitmask} (n={c.graph.n}): {status}, "
                f"{c.facets_certified}/{c.facets_total} facets certified"
            )
            for chk in c.failures():
                lines.append(f"  failed {chk.name}: {chk.detail}")
        lines.append(f"{len(certs) - len(failed)}/{len(certs)} graphs passed")
        return code, "\n".join(lines) + "\n"
    return code, _dump({
        "graphs": len(certs),
        "passed": len(certs) - len(failed),
        "failed_bitmasks": [c.graph.edge_bitmask for c in failed],
        "results": [c.to_json() for c in certs],
    })


COMMANDS = {
    "describe": cmd_describe,
    "check": cmd_check,
    "decompose": cmd_decompose,
    "vertices": cmd_vertices,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", metavar="PATH", help="write here instead of stdout")

    p = argparse.ArgumentParser(prog="graphdefcone", description="Deformation cones of graphical zonotopes.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("describe", parents=[common], help="facet and equation description")
    d.add_argument("graph")
    d.add_argument("--redundant", action="store_true", help="emit the wall-crossing description")

    c = sub.add_parser("check", parents=[common], help="membership of a height vector")
    c.add_argument("graph")
    c.add_argument("heights")

    z = sub.add_parser("decompose", parents=[common], help="coordinates in the clique basis")
    z.add_argument("graph")
    z.add_argument("heights")
    z.add_argument("--zonotopal", action="store_true", help="edge-segment decomposition (triangle-free graphs)")

    v = sub.add_parser("vertices", parents=[common], help="vertices of P_h (default h: the zonotope)")
    v.add_argument("graph")
    v.add_argument("heights", nargs="?")
    v.add_argument("--off", action="store_true", help="emit OFF instead of JSON")

    w = sub.add_parser("verify", parents=[common], help="certify the description against the oracles")
    w.add_argument("graph", nargs="?")
    w.add_argument("--all-n", type=int, metavar="K", help="every labeled graph on K <= 5 vertices")
    return p


def parse_config(argv: list[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        graph=getattr(args, "graph", None),
        heights=getattr(args, "heights", None),
        output=args.output,
        format=args.format,
        redundant=getattr(args, "redundant", False),
        zonotopal=getattr(args, "zonotopal", False),
        all_n=getattr(args, "all_n", None),
        off=getattr(args, "off", False),
    )
    if cfg.command == "verify" and (cfg.graph is None) == (cfg.all_n is None):
        raise InputError("verify takes either a graph file or --all-n K")
    return cfg


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_config(argv)
        code, text = COMMANDS[cfg.command](cfg)
    except SystemExit as e:  # argparse usage errors
        return EXIT_INPUT if e.code else EXIT_OK
    except (InputError, GraphError, SizeGuardError, defcone.NotInConeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
