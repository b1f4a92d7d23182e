"""JSON documents for graphs, families and dynamical systems.

Families key their components by the comma-joined sorted colors of ``F``
(``""`` for the empty set); absent keys mean the empty component.  Vertex
lists are always written in declared vertex order so output is byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path as FilePath
from typing import Any, Sequence

from .bits import colors_of, fmask_of
from .dynsys import DynSys
from .errors import InputError
from .kgraph import Edge, KGraph
from .tuples import TupleFamily, color_sets, vertex_names


def load_json(path) -> Any:
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def dumps(doc: Any) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _field(doc: dict, name: str, kind=None):
    if not isinstance(doc, dict) or name not in doc:
        raise InputError(f"missing field {name!r}")
    value = doc[name]
    if kind is not None and not isinstance(value, kind):
        raise InputError(f"field {name!r} has the wrong type")
    return value


# -- graphs --------------------------------------------------------------------

def graph_from_doc(doc: dict) -> KGraph:
    k = _field(doc, "k", int)
    vertices = [str(v) for v in _field(doc, "vertices", list)]
    edges = []
    for e in doc.get("edges", []):
        try:
            edges.append(Edge(str(e["id"]), int(e["color"]), str(e["range"]), str(e["source"])))
        except (KeyError, TypeError, ValueError):
            raise InputError(f"malformed edge entry {e!r}") from None
    squares = []
    for sq in doc.get("squares", []):
        if not isinstance(sq, list) or len(sq) != 4:
            raise InputError(f"square {sq!r} must list four edge ids")
        squares.append(tuple(str(x) for x in sq))
    return KGraph(k, tuple(vertices), tuple(edges), tuple(squares))


def graph_to_doc(g: KGraph) -> dict:
    return {
        "k": g.k,
        "vertices": list(g.vertices),
        "edges": [{"id": e.id, "color": e.color, "range": e.range, "source": e.source} for e in g.edges],
        "squares": [list(sq) for sq in g.squares],
    }


# -- families ------------------------------------------------------------------

def fkey(F: int) -> str:
    return ",".join(str(c) for c in colors_of(F))


def parse_fkey(key: str, k: int) -> int:
    key = key.strip()
    if not key:
        return 0
    try:
        colors = [int(c) for c in key.split(",")]
    except ValueError:
        raise InputError(f"bad color-set key {key!r}") from None
    if any(not 1 <= c <= k for c in colors):
        raise InputError(f"color-set key {key!r} has colors outside 1..{k}")
    return fmask_of(colors)


def vertex_mask(names: Sequence[str], vertices: Sequence[str]) -> int:
    index = {v: t for t, v in enumerate(vertices)}
    mask = 0
    for v in names:
        if v not in index:
            raise InputError(f"unknown vertex {v!r}")
        mask |= 1 << index[v]
    return mask


def vertex_list(mask: int, vertices: Sequence[str]) -> list[str]:
    return [v for t, v in enumerate(vertices) if (mask >> t) & 1]


def family_from_doc(doc: dict, system) -> TupleFamily:
    k = system.k
    names = vertex_names(system)
    comps = _field(doc, "components", dict)
    out = [0] * (1 << k)
    for key, members in comps.items():
        if not isinstance(members, list):
            raise InputError(f"component {key!r} must be a list of vertex names")
        out[parse_fkey(key, k)] = vertex_mask([str(v) for v in members], names)
    return TupleFamily(k, out)


def family_to_doc(H: TupleFamily, vertices: Sequence[str]) -> dict:
    return {"components": {fkey(F): vertex_list(H[F], vertices) for F in color_sets(H.k)}}


def families_to_doc(families: Sequence[TupleFamily], vertices: Sequence[str]) -> dict:
    """Each entry is itself a family document."""
    return {"families": [family_to_doc(H, vertices) for H in families]}


def families_from_doc(doc: dict, system) -> list[TupleFamily]:
    return [family_from_doc(entry, system) for entry in _field(doc, "families", list)]


def vertex_set_from_arg(text: str, vertices: Sequence[str]) -> int:
    """Comma-separated vertex names (empty string for the empty set)."""
    names = [t.strip() for t in text.split(",") if t.strip()]
    return vertex_mask(names, vertices)


# -- dynamical systems ---------------------------------------------------------

def dynsys_from_doc(doc: dict) -> DynSys:
    d = _field(doc, "d", int)
    carrier = [str(v) for v in _field(doc, "carrier", list)]
    maps: dict[int, dict[str, str]] = {}
    for entry in doc.get("maps", []):
        try:
            color = int(entry["color"])
            pairs = entry["pairs"]
        except (KeyError, TypeError, ValueError):
            raise InputError(f"malformed map entry {entry!r}") from None
        if color in maps:
            raise InputError(f"map of color {color} given twice")
        table: dict[str, str] = {}
        for pair in pairs:
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputError(f"pair {pair!r} must have two entries")
            v, w = str(pair[0]), str(pair[1])
            if v in table:
                raise InputError(f"sigma_{color} is given twice at {v!r}")
            table[v] = w
        maps[color] = table
    return DynSys.from_pairs(d, carrier, maps)


def dynsys_to_doc(D: DynSys) -> dict:
    return {
        "d": D.d,
        "carrier": list(D.carrier),
        "maps": [
            {"color": i + 1,
             "pairs": [[D.carrier[v], D.carrier[w]] for v, w in enumerate(m) if w is not None]}
            for i, m in enumerate(D.maps)
        ],
    }
