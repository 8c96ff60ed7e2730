"""Graph, height-vector and description file formats used by the CLI."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .defcone import ConeDescription, ConeStats, HeightVector, LinearForm
from .graphcore import Graph, GraphError, mask_of, members


class InputError(ValueError):
    pass


def parse_graph(text: str, source: str = "<graph>") -> Graph:
    """JSON ``{"n": .., "edges": [[u, v], ..]}`` or one ``u v`` pair per line."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"{source}:{e.lineno}: invalid JSON: {e.msg}") from None
        if not isinstance(data, dict) or "n" not in data or "edges" not in data:
            raise InputError(f"{source}: expected an object with keys 'n' and 'edges'")
        n = data["n"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise InputError(f"{source}: 'n' must be an integer")
        edges = []
        for e in data["edges"]:
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise InputError(f"{source}: edge {e!r} is not a pair of integers")
            edges.append(tuple(e))
        try:
            return Graph.from_edges(n, edges)
        except GraphError as e:
            raise InputError(f"{source}: {e}") from None
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise InputError(f"{source}:{lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InputError(f"{source}:{lineno}: vertex labels must be integers") from None
        if u < 0 or v < 0:
            raise InputError(f"{source}:{lineno}: negative vertex label")
        if u == v:
            raise InputError(f"{source}:{lineno}: loop at vertex {u}")
        edges.append((lineno, u, v))
    n = max((max(u, v) for _, u, v in edges), default=-1) + 1
    seen = {}
    for lineno, u, v in edges:
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"{source}:{lineno}: edge {u} {v} repeats line {seen[key]}")
        seen[key] = lineno
    return Graph.from_edges(n, list(seen))


def read_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read graph file: {e}") from None
    return parse_graph(text, str(path))


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: boolean is not a number")
    if isinstance(value, (int, str)):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"{where}: {value!r} is not a rational") from None
    if isinstance(value, float):
        return Fraction(repr(value))
    raise InputError(f"{where}: {value!r} is not a rational")


def _parse_key(key: str, n: int, where: str) -> int:
    key = key.strip()
    if key.startswith("["):
        try:
            vs = json.loads(key)
        except json.JSONDecodeError:
            raise InputError(f"{where}: bad subset key {key!r}") from None
        if not isinstance(vs, list) or not all(isinstance(v, int) and 0 <= v < n for v in vs) or len(set(vs)) != len(vs):
            raise InputError(f"{where}: bad subset key {key!r}")
        return mask_of(vs)
    try:
        mask = int(key)
    except ValueError:
        raise InputError(f"{where}: bad subset key {key!r}") from None
    if not 0 <= mask < 1 << n:
        raise InputError(f"{where}: mask {mask} out of range for n = {n}")
    return mask


def parse_heights(text: str, n: int, source: str = "<heights>") -> HeightVector:
    """Subset keys are integer masks (``"5"``) or vertex lists (``"[0,2]"``); values rational strings."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}:{e.lineno}: invalid JSON: {e.msg}") from None
    values: dict[int, Fraction] = {}

    def put(mask: int, value, where: str):
        if mask in values:
            raise InputError(f"{where}: subset {mask} given twice")
        values[mask] = _parse_rational(value, where)

    if isinstance(data, dict) and "heights" in data:
        if data.get("n", n) != n:
            raise InputError(f"{source}: heights are for n = {data['n']}, graph has n = {n}")
        for i, entry in enumerate(data["heights"]):
            where = f"{source}: entry {i}"
            if "mask" in entry:
                mask = _parse_key(str(entry["mask"]), n, where)
                if "set" in entry and mask_of(entry["set"]) != mask:
                    raise InputError(f"{where}: 'mask' and 'set' disagree")
            elif "set" in entry:
                mask = _parse_key(json.dumps(entry["set"]), n, where)
            else:
                raise InputError(f"{where}: needs 'mask' or 'set'")
            put(mask, entry.get("value"), where)
    elif isinstance(data, dict):
        for key, value in data.items():
            put(_parse_key(key, n, f"{source}: key {key!r}"), value, f"{source}: key {key!r}")
    else:
        raise InputError(f"{source}: expected a JSON object")
    missing = [s for s in range(1 << n) if s not in values]
    if missing:
        shown = ", ".join(f"{s} {list(members(s))}" for s in missing[:8])
        raise InputError(f"{source}: missing {len(missing)} subset(s): {shown}")
    return HeightVector(tuple(values[s] for s in range(1 << n)))


def read_heights(path: str | Path, n: int) -> HeightVector:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read heights file: {e}") from None
    return parse_heights(text, n, str(path))


def heights_to_json(h: HeightVector) -> dict:
    return {
        "n": h.n,
        "heights": [{"mask": s, "set": list(members(s)), "value": str(v)} for s, v in enumerate(h)],
    }


def form_to_json(f: LinearForm, relation: str) -> dict:
    return {
        "coeffs": {str(s): c for s, c in f.coeffs},
        "terms": [{"mask": s, "set": list(members(s)), "coeff": c} for s, c in f.coeffs],
        "tag": f.tag.to_json(),
        "text": f.render(relation),
    }


def description_to_json(g: Graph, desc: ConeDescription, st: ConeStats) -> dict:
    return {
        "graph": graph_to_json(g),
        "kind": desc.kind,
        "stats": st.to_json(),
        "equations": [form_to_json(f, "=") for f in desc.equations],
        "inequalities": [form_to_json(f, ">=") for f in desc.inequalities],
    }


def description_to_text(g: Graph, desc: ConeDescription, st: ConeStats) -> str:
    es = " ".join(f"{u}-{v}" for u, v in g.edges)
    lines = [
        f"graph: n={g.n} edges=[{es}]",
        f"description: {desc.kind}",
        f"stats: dim={st.dim} lineality={st.lineality} facets={st.facets} simplicial={str(st.simplicial).lower()}",
        f"equations ({len(desc.equations)}):",
    ]
    lines += [f"  {f.render('=')}" for f in desc.equations]
    lines.append(f"inequalities ({len(desc.inequalities)}):")
    lines += [f"  {f.render('>=')}" for f in desc.inequalities]
    return "\n".join(lines) + "\n"
