"""Command line interface: ``kgideals <command> ...``.

Exit codes: 0 success/true, 1 property false, 2 input error,
3 capacity exceeded, 4 oracle inconclusive.
"""

from __future__ import annotations

import argparse
import random
import sys
from typing import Sequence

from . import lattice as lat
from .bits import format_colorset
from .corpus import random_dynsys, random_kgraph
from .dynsys import dyn_invariant_subsets, dyn_is_nt_tuple, validate_dynsys
from .errors import InputError, KGIdealsError
from .io import (
    dumps,
    dynsys_from_doc,
    dynsys_to_doc,
    families_to_doc,
    family_from_doc,
    family_to_doc,
    graph_from_doc,
    graph_to_doc,
    load_json,
    parse_fkey,
    vertex_list,
    vertex_set_from_arg,
)
from .kgraph import (
    KGraph,
    f_tracing,
    jf_vertices,
    quotient_graph,
    require_valid,
    saturation,
    subgraph,
    validate_kgraph,
)
from .oracle import antichain_families, katsura_tpairs, nt_via_absorbent
from .tuples import (
    TupleFamily,
    is_m_tuple,
    is_no_tuple,
    is_nt_tuple,
    is_relative_no_tuple,
    maximalise,
    proper_nonempty,
    rf_condition_sets,
    tracing_family,
)


class Session:
    """Collects output so every command writes its result in one place."""

    def __init__(self, out, err):
        self.out = out
        self.err = err

    def say(self, text: str = "") -> None:
        self.out.write(text if text.endswith("\n") else text + "\n")

    def note(self, text: str) -> None:
        self.err.write(text + "\n")


def _braces(mask: int, vertices: Sequence[str]) -> str:
    return "{" + ",".join(vertex_list(mask, vertices)) + "}"


def _graph(path: str, require: bool = True) -> KGraph:
    g = graph_from_doc(load_json(path))
    if require:
        require_valid(g)
    return g


def _family(path: str, system) -> TupleFamily:
    return family_from_doc(load_json(path), system)


def _F(text: str, k: int) -> int:
    F = parse_fkey(text, k)
    if F == 0:
        raise InputError("--F needs at least one color")
    return F


def _verdict(s: Session, name: str, verdict, vertices) -> int:
    if verdict:
        s.say(f"{name}: yes")
        return 0
    s.say(f"{name}: no")
    s.say(verdict.describe(vertices))
    return 1


def _oracle_answer(s: Session, name: str, ok: bool) -> int:
    s.say(f"{name}: {'yes' if ok else 'no'} (oracle)")
    return 0 if ok else 1


# -- commands --------------------------------------------------------------------

def cmd_validate(a, s: Session) -> int:
    g = _graph(a.graph, require=False)
    report = validate_kgraph(g)
    if report.ok:
        s.say(f"valid {g.k}-graph: {g.n} vertices, {len(g.edges)} edges, {len(g.squares)} squares")
        return 0
    s.say("invalid:")
    for v in report:
        s.say(f"  [{v.kind}] {v.message}")
    return 1


def cmd_tracing(a, s):
    g = _graph(a.graph)
    F = _F(a.F, g.k)
    s.say(_braces(f_tracing(g, F), g.vertices))
    return 0


def cmd_jf(a, s):
    g = _graph(a.graph)
    F = _F(a.F, g.k)
    s.say(_braces(jf_vertices(g, F, vertex_set_from_arg(a.H0, g.vertices)), g.vertices))
    return 0


def cmd_quotient(a, s):
    g = _graph(a.graph)
    s.say(dumps(graph_to_doc(quotient_graph(g, vertex_set_from_arg(a.H, g.vertices)))))
    return 0


def cmd_subgraph(a, s):
    g = _graph(a.graph)
    s.say(dumps(graph_to_doc(subgraph(g, vertex_set_from_arg(a.H, g.vertices)))))
    return 0


def cmd_saturate(a, s):
    g = _graph(a.graph)
    s.say(_braces(saturation(g, vertex_set_from_arg(a.H, g.vertices)), g.vertices))
    return 0


def _explain_sets(s: Session, g, H: TupleFamily) -> None:
    for F in proper_nonempty(g.k):
        try:
            H1, H2, H3 = rf_condition_sets(g, H, F)
        except KGIdealsError:
            return
        s.say(f"F={format_colorset(F)}: H1={_braces(H1, g.vertices)} H2={_braces(H2, g.vertices)} "
              f"H3={_braces(H3, g.vertices)} H_F={_braces(H[F], g.vertices)}")


def cmd_check_nt(a, s):
    g = _graph(a.graph)
    H = _family(a.family, g)
    if a.oracle:
        return _oracle_answer(s, "NT-tuple", nt_via_absorbent(g, H))
    code = _verdict(s, "NT-tuple", is_nt_tuple(g, H), g.vertices)
    if a.explain:
        _explain_sets(s, g, H)
    return code


def cmd_check_no(a, s):
    g = _graph(a.graph)
    H = _family(a.family, g)
    K = _family(a.relative, g) if a.relative else tracing_family(g)
    name = "relative NO-tuple" if a.relative else "NO-tuple"
    if a.oracle:
        return _oracle_answer(s, name, nt_via_absorbent(g, H) and K <= H)
    verdict = is_relative_no_tuple(g, H, K) if a.relative else is_no_tuple(g, H)
    code = _verdict(s, name, verdict, g.vertices)
    if a.explain:
        _explain_sets(s, g, H)
    return code


def cmd_check_m(a, s):
    g = _graph(a.graph)
    G = _family(a.family, g)
    if a.oracle:
        return _oracle_answer(s, "(M)-tuple", G[0] == 0 and nt_via_absorbent(g, G))
    return _verdict(s, "(M)-tuple", is_m_tuple(g, G), g.vertices)


def cmd_maximalise(a, s):
    g = _graph(a.graph)
    s.say(dumps(family_to_doc(maximalise(g, _family(a.family, g)), g.vertices)))
    return 0


def _nodes(a, g) -> list[TupleFamily]:
    if getattr(a, "no", False):
        return lat.enumerate_no_tuples(g, a.max_bits)
    if getattr(a, "relative", None):
        return lat.enumerate_relative_no_tuples(g, _family(a.relative, g), a.max_bits)
    return lat.enumerate_nt_tuples(g, a.max_bits)


def cmd_enumerate(a, s):
    g = _graph(a.graph)
    if a.oracle:
        if a.no or a.relative:
            raise InputError("the oracle route enumerates NT-tuples only")
        if g.k == 1:
            nodes = [TupleFamily(1, p) for p in katsura_tpairs(g)]
        elif g.n == 1:
            nodes = sorted(antichain_families(g), key=TupleFamily.sort_key)
        else:
            raise InputError("no enumeration oracle for this graph (needs k = 1 or one vertex)")
    else:
        nodes = _nodes(a, g)
    s.say(dumps(families_to_doc(nodes, g.vertices)))
    return 0


def cmd_lattice(a, s):
    g = _graph(a.graph)
    lattice = lat.build_lattice(g, _nodes(a, g), a.max_bits)
    s.say(lat.export(lattice, a.format, g.vertices))
    return 0


def _pair(a, g):
    L1, L2 = _family(a.first, g), _family(a.second, g)
    for L in (L1, L2):
        verdict = is_nt_tuple(g, L)
        if not verdict:
            raise InputError("input is not an NT-tuple: " + verdict.describe(g.vertices))
    return L1, L2


def cmd_meet(a, s):
    g = _graph(a.graph)
    L1, L2 = _pair(a, g)
    s.say(dumps(family_to_doc(lat.meet(L1, L2), g.vertices)))
    return 0


def cmd_join(a, s):
    g = _graph(a.graph)
    L1, L2 = _pair(a, g)
    nodes = lat.enumerate_nt_tuples(g, a.max_bits)
    s.note(f"enumerated {len(nodes)} NT-tuples within the capacity bound of {a.max_bits} bits")
    s.say(dumps(family_to_doc(lat.join(L1, L2, nodes), g.vertices)))
    return 0


def cmd_join_formula(a, s):
    g = _graph(a.graph)
    L1, L2 = _pair(a, g)
    H0 = vertex_set_from_arg(a.H0, g.vertices)
    s.say(dumps(family_to_doc(lat.join_formula_check(g, L1, L2, H0), g.vertices)))
    return 0


def _family_line(H: TupleFamily, vertices) -> str:
    parts = []
    for F in range(1 << H.k):
        key = format_colorset(F)
        parts.append(f"{key}:{_braces(H[F], vertices)}")
    return "(" + ", ".join(parts) + ")"


def cmd_regular_report(a, s):
    g = _graph(a.graph)
    report = lat.regular_case_report(g, a.max_bits)
    s.say(f"NO-tuples from hereditary negatively invariant sets: {len(report.expected_no)}")
    s.say(f"NO-tuples by enumeration: {len(report.enumerated_no)}")
    s.say(f"agree: {'yes' if report.agrees else 'no'}")
    if report.antichains is not None:
        s.say(f"NT-tuples labelled by antichains: {len(report.antichains)}")
        for H, label in report.antichains:
            names = "{" + ", ".join(format_colorset(F) for F in label) + "}"
            s.say(f"  {names}  {_family_line(H, g.vertices)}")
    return 0 if report.agrees else 1


def cmd_rsy_report(a, s):
    g = _graph(a.graph)
    report = lat.rsy_report(g, a.max_bits)
    s.say(f"hereditary saturated sets: {len(report.hereditary_saturated)}")
    for H, image in zip(report.hereditary_saturated, report.images):
        s.say(f"  {_braces(H, g.vertices)} -> {_family_line(image, g.vertices)}")
    s.say(f"NO-tuples by enumeration: {len(report.enumerated_no)}")
    s.say(f"bijection: {'yes' if report.bijective else 'no'}")
    s.say(f"joins match saturation of unions: {'yes' if not report.join_failures else 'no'}")
    return 0 if report.agrees else 1


def cmd_dynsys_validate(a, s):
    D = dynsys_from_doc(load_json(a.dynsys))
    report = validate_dynsys(D)
    if report.ok:
        s.say(f"valid system of rank {D.d} on {D.n} points")
        return 0
    s.say("invalid:")
    for v in report:
        s.say(f"  [{v.kind}] {v.message}")
    return 1


def cmd_dynsys_check_nt(a, s):
    D = dynsys_from_doc(load_json(a.dynsys))
    H = _family(a.family, D)
    if a.oracle:
        if D.d == 1:
            ok = (H[0], H[1]) in set(katsura_tpairs(D))
        else:
            ok = nt_via_absorbent(D, H)
        return _oracle_answer(s, "NT-tuple", ok)
    return _verdict(s, "NT-tuple", dyn_is_nt_tuple(D, H), D.carrier)


def cmd_dynsys_invariants(a, s):
    D = dynsys_from_doc(load_json(a.dynsys))
    for H in dyn_invariant_subsets(D):
        s.say(_braces(H, D.carrier))
    return 0


def cmd_generate(a, s):
    rng = random.Random(a.seed)
    if a.kind == "dynsys":
        s.say(dumps(dynsys_to_doc(random_dynsys(rng, a.k, a.max_vertices))))
    else:
        s.say(dumps(graph_to_doc(random_kgraph(rng, a.k, a.max_vertices))))
    return 0


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kgideals", description="Gauge-invariant ideal lattices of finite k-graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, func, *args, help=None):
        c = sub.add_parser(name, help=help)
        c.add_argument("--max-bits", type=int, default=lat.DEFAULT_MAX_BITS,
                       help="capacity bound on vertices x 2^k for enumeration (default %(default)s)")
        for arg in args:
            c.add_argument(arg)
        c.set_defaults(func=func)
        return c

    def decision(c):
        c.add_argument("--oracle", action="store_true", help="use the independent oracle route")
        c.add_argument("--explain", action="store_true", help="print witnesses and intermediate sets")
        return c

    command("validate", cmd_validate, "graph", help="check the square table and cube condition")
    command("tracing", cmd_tracing, "graph", help="F-tracing vertices").add_argument("--F", required=True)
    c = command("jf", cmd_jf, "graph", help="vertices of J_F over a hereditary set")
    c.add_argument("--F", required=True)
    c.add_argument("--H0", default="")
    command("quotient", cmd_quotient, "graph").add_argument("--H", required=True)
    command("subgraph", cmd_subgraph, "graph").add_argument("--H", required=True)
    command("saturate", cmd_saturate, "graph").add_argument("--H", required=True)
    decision(command("check-nt", cmd_check_nt, "graph", "family"))
    decision(command("check-no", cmd_check_no, "graph", "family")).add_argument("--relative", metavar="K")
    decision(command("check-m", cmd_check_m, "graph", "family"))
    command("maximalise", cmd_maximalise, "graph", "family")
    c = decision(command("enumerate", cmd_enumerate, "graph"))
    group = c.add_mutually_exclusive_group()
    group.add_argument("--no", action="store_true", help="NO-tuples only")
    group.add_argument("--relative", metavar="K", help="NT-tuples containing the family K")
    c = command("lattice", cmd_lattice, "graph")
    c.add_argument("--format", choices=("dot", "json"), default="json")
    group = c.add_mutually_exclusive_group()
    group.add_argument("--no", action="store_true")
    group.add_argument("--relative", metavar="K")
    command("meet", cmd_meet, "graph", "first", "second")
    command("join", cmd_join, "graph", "first", "second")
    command("join-formula", cmd_join_formula, "graph", "first", "second").add_argument("--H0", required=True)
    command("regular-report", cmd_regular_report, "graph")
    command("rsy-report", cmd_rsy_report, "graph")
    command("dynsys-validate", cmd_dynsys_validate, "dynsys")
    decision(command("dynsys-check-nt", cmd_dynsys_check_nt, "dynsys", "family"))
    command("dynsys-invariants", cmd_dynsys_invariants, "dynsys")
    c = command("generate", cmd_generate, help="emit a random valid document")
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--kind", choices=("graph", "dynsys"), default="graph")
    c.add_argument("--max-vertices", type=int, default=4)
    return p


def main(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    session = Session(out, err)
    try:
        return args.func(args, session)
    except KGIdealsError as exc:
        err.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
