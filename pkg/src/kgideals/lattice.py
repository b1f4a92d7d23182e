"""Enumeration of NT/NO tuples, lattice operations and Hasse diagrams."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import reduce
from typing import Sequence

from .bits import colors_of, format_colorset, iter_bits
from .errors import CapacityError, InputError, PreconditionError
from .eventual import eventually_inside
from .io import family_to_doc, vertex_list
from .kgraph import f_tracing, is_locally_convex, is_saturated, is_sourceless, jf_vertices, saturation
from .transfer import as_transfer, closed_sets
from .tuples import (
    TupleFamily,
    color_sets,
    components_above,
    is_m_tuple,
    is_neg_invariant,
    is_nt_tuple,
    iterate,
    proper_nonempty,
    pull_back,
    to_quotient,
    tracing_family,
    vertex_names,
)

DEFAULT_MAX_BITS = 64


def _guard(ts, max_bits: int) -> None:
    bits = ts.n << ts.k
    if bits > max_bits:
        raise CapacityError(
            f"{ts.n} vertices x 2^{ts.k} components = {bits} bits exceeds the bound {max_bits}",
            max_bits)


def _search(ts, K: TupleFamily | None, max_bits: int) -> list[TupleFamily]:
    _guard(ts, max_bits)
    top = ts.all_colors
    order = color_sets(ts.k)[1:]
    lower = K.components if K is not None else (0,) * (1 << ts.k)
    found = []

    def passes_iv(comps: list[int]) -> bool:
        H = TupleFamily(ts.k, comps)
        for F in proper_nonempty(ts.k):
            comp = top & ~F
            H1 = ts.interior(comp, jf_vertices(ts, F, comps[0]))
            H2 = ts.interior(comp, components_above(H, F, ts.full))
            candidates = H1 & H2 & ~comps[F]
            if candidates and eventually_inside(ts, comp, comps[F]) & candidates:
                return False
        return True

    def fill(comps: list[int], t: int, bounds: dict[int, int]):
        if t == len(order):
            if passes_iv(comps):
                found.append(TupleFamily(ts.k, comps))
            return
        F = order[t]
        base = lower[F]
        for i in iter_bits(F):
            base |= comps[F & ~(1 << i)]
        for S in closed_sets(ts, top & ~F, base, bounds[F]):
            comps[F] = S
            fill(comps, t + 1, bounds)
        comps[F] = 0

    for H0 in closed_sets(ts, top, lower[0], ts.full):
        bounds = {F: jf_vertices(ts, F, H0) for F in order}
        comps = [0] * (1 << ts.k)
        comps[0] = H0
        fill(comps, 0, bounds)
    found.sort(key=TupleFamily.sort_key)
    return found


def enumerate_nt_tuples(system, max_bits: int = DEFAULT_MAX_BITS) -> list[TupleFamily]:
    """All NT-tuples in canonical order."""
    return _search(as_transfer(system), None, max_bits)


def enumerate_relative_no_tuples(system, K: TupleFamily, max_bits: int = DEFAULT_MAX_BITS) -> list[TupleFamily]:
    """NT-tuples containing ``K`` componentwise."""
    ts = as_transfer(system)
    if K.k != ts.k:
        raise InputError("relative family has the wrong rank")
    return _search(ts, K, max_bits)


def enumerate_no_tuples(system, max_bits: int = DEFAULT_MAX_BITS) -> list[TupleFamily]:
    return enumerate_relative_no_tuples(system, tracing_family(system), max_bits)


# -- meet and join ---------------------------------------------------------------

def meet(L1: TupleFamily, L2: TupleFamily, system=None) -> TupleFamily:
    """Componentwise intersection; with ``system`` given, the inputs are checked."""
    if system is not None:
        for L in (L1, L2):
            verdict = is_nt_tuple(system, L)
            if not verdict:
                raise PreconditionError("meet of a non-NT family: " + verdict.describe(vertex_names(system)))
    return L1 & L2


def join(L1: TupleFamily, L2: TupleFamily, nodes: Sequence[TupleFamily]) -> TupleFamily:
    """Least node above both, computed as the meet of all upper bounds."""
    union = L1 | L2
    upper = [N for N in nodes if union <= N]
    if not upper:
        raise PreconditionError("no node lies above both families")
    return reduce(lambda a, b: a & b, upper)


def join_formula_check(system, L1: TupleFamily, L2: TupleFamily, H0: int) -> TupleFamily:
    """Join computed in the quotient off ``H0`` by ``k - 1`` one-step iterations."""
    ts = as_transfer(system)
    if not ts.is_closed(ts.all_colors, H0):
        raise PreconditionError("H0 is not hereditary")
    union = L1 | L2
    start = TupleFamily(ts.k, [H0] + list(union.components[1:]))
    quotient, G = to_quotient(ts, start)
    G = iterate(quotient, G, ts.k - 1, check=False)
    return pull_back(G, H0)


# -- Hasse diagrams --------------------------------------------------------------

@dataclass
class IdealLattice:
    nodes: list[TupleFamily]
    covers: list[tuple[int, int]]
    annotations: list[dict] = field(default_factory=list)

    @property
    def bottom(self) -> int:
        return min(range(len(self.nodes)), key=lambda t: sum(map(int.bit_count, self.nodes[t].components)))

    @property
    def top(self) -> int:
        return max(range(len(self.nodes)), key=lambda t: sum(map(int.bit_count, self.nodes[t].components)))


def hasse(nodes: Sequence[TupleFamily]) -> IdealLattice:
    """Covering pairs ``(i, j)`` with ``nodes[i]`` directly below ``nodes[j]``."""
    nodes = list(nodes)
    if len(set(nodes)) != len(nodes):
        raise InputError("duplicate nodes")
    above = [0] * len(nodes)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if i != j and a <= b:
                above[i] |= 1 << j
    covers = []
    for i in range(len(nodes)):
        for j in iter_bits(above[i]):
            if not any((above[m] >> j) & 1 for m in iter_bits(above[i])):
                covers.append((i, j))
    return IdealLattice(nodes, covers)


def antichain_label(H: TupleFamily) -> list[int]:
    """Minimal color sets whose component is nonempty (single-vertex graphs)."""
    support = [F for F in range(1 << H.k) if H[F]]
    return sorted(
        (F for F in support if not any(D != F and D & F == D for D in support)),
        key=lambda F: (bin(F).count("1"), F),
    )


def build_lattice(system, nodes: Sequence[TupleFamily] | None = None,
                  max_bits: int = DEFAULT_MAX_BITS) -> IdealLattice:
    ts = as_transfer(system)
    if nodes is None:
        nodes = enumerate_nt_tuples(ts, max_bits)
    lattice = hasse(nodes)
    trace = tracing_family(ts)
    for H in lattice.nodes:
        note = {"no": trace <= H, "m": bool(is_m_tuple(ts, H))}
        if ts.n == 1:
            note["antichain"] = [list(colors_of(F)) for F in antichain_label(H)]
        lattice.annotations.append(note)
    return lattice


def _label(H: TupleFamily, vertices: Sequence[str]) -> str:
    parts = []
    for F in color_sets(H.k):
        if H[F]:
            name = format_colorset(F)
            parts.append(f"{name}→{{{','.join(vertex_list(H[F], vertices))}}}")
    return "\\n".join(parts) if parts else "0"


def export(lattice: IdealLattice, fmt: str, vertices: Sequence[str]) -> str:
    if fmt == "dot":
        lines = ["digraph lattice {", "  rankdir=BT;", "  node [shape=box];"]
        for t, H in enumerate(lattice.nodes):
            lines.append(f'  n{t} [label="{_label(H, vertices)}"];')
        for i, j in lattice.covers:
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "nodes": [
                {"id": t, **family_to_doc(H, vertices),
                 **({"flags": lattice.annotations[t]} if lattice.annotations else {})}
                for t, H in enumerate(lattice.nodes)
            ],
            "covers": [list(c) for c in lattice.covers],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    raise InputError(f"unknown format {fmt!r}; use dot or json")


# -- special-case reports -------------------------------------------------------

@dataclass
class RegularReport:
    expected_no: list[TupleFamily]
    enumerated_no: list[TupleFamily]
    antichains: list[tuple[TupleFamily, list[int]]] | None

    @property
    def agrees(self) -> bool:
        return self.expected_no == self.enumerated_no


def regular_case_report(system, max_bits: int = DEFAULT_MAX_BITS) -> RegularReport:
    ts = as_transfer(system)
    if not is_sourceless(ts):
        raise PreconditionError("the graph has sources, so the regular case does not apply")
    full = ts.full
    expected = [
        TupleFamily(ts.k, [H0] + [full] * ((1 << ts.k) - 1))
        for H0 in closed_sets(ts, ts.all_colors, 0, full)
        if is_neg_invariant(ts, H0)
    ]
    expected.sort(key=TupleFamily.sort_key)
    antichains = None
    if ts.n == 1:
        antichains = [(H, antichain_label(H)) for H in enumerate_nt_tuples(ts, max_bits)]
    return RegularReport(expected, enumerate_no_tuples(ts, max_bits), antichains)


@dataclass
class RSYReport:
    hereditary_saturated: list[int]
    images: list[TupleFamily]
    enumerated_no: list[TupleFamily]
    join_failures: list[tuple[int, int]]

    @property
    def bijective(self) -> bool:
        return sorted(self.images, key=TupleFamily.sort_key) == self.enumerated_no

    @property
    def agrees(self) -> bool:
        return self.bijective and not self.join_failures


def no_tuple_of(system, H0: int) -> TupleFamily:
    """``F -> f_tracing(F) ∪ H0`` with ``∅``-component ``H0``."""
    ts = as_transfer(system)
    return TupleFamily(ts.k, [H0] + [f_tracing(ts, F) | H0 for F in range(1, 1 << ts.k)])


def rsy_report(system, max_bits: int = DEFAULT_MAX_BITS) -> RSYReport:
    ts = as_transfer(system)
    if not is_locally_convex(ts):
        raise PreconditionError("the graph is not locally convex")
    hs = sorted(H for H in closed_sets(ts, ts.all_colors, 0, ts.full) if is_saturated(ts, H))
    images = [no_tuple_of(ts, H) for H in hs]
    no = enumerate_no_tuples(ts, max_bits)
    failures = []
    for a in range(len(hs)):
        for b in range(a + 1, len(hs)):
            lattice_join = join(images[a], images[b], no)
            if lattice_join != no_tuple_of(ts, saturation(ts, hs[a] | hs[b])):
                failures.append((hs[a], hs[b]))
    return RSYReport(hs, images, no, failures)

