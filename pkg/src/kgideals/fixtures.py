"""Small named graphs used throughout the tests and the documentation."""

from __future__ import annotations

from .kgraph import Edge, KGraph


def fx1(k: int) -> KGraph:
    """One vertex ``v`` with a loop ``l<i>`` of every color; the only possible squares."""
    loops = [Edge(f"l{i}", i, "v", "v") for i in range(1, k + 1)]
    squares = [(f"l{i}", f"l{j}", f"l{j}", f"l{i}")
               for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    return KGraph(k, ("v",), tuple(loops), tuple(squares))


def fx2() -> KGraph:
    """The 1-graph ``u <- w`` with a single edge ``e``."""
    return KGraph(1, ("u", "w"), (Edge("e", 1, "u", "w"),))


def fx3() -> KGraph:
    """Two vertices: color-1 loops ``b`` at ``u`` and ``a`` at ``w``, color-2 edge
    ``g: w -> u`` and color-2 loop ``h`` at ``w``."""
    edges = (
        Edge("b", 1, "u", "u"),
        Edge("a", 1, "w", "w"),
        Edge("g", 2, "u", "w"),
        Edge("h", 2, "w", "w"),
    )
    return KGraph(2, ("u", "w"), edges, (("b", "g", "g", "a"), ("a", "h", "h", "a")))
