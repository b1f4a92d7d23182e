"""Slow, independent decision procedures used to cross-check the main code.

Everything here works with plain Python sets and spelled-out quantifiers and
avoids the closure and eventual-containment helpers of the main path.
"""

from __future__ import annotations

from itertools import combinations
from math import lcm

from .errors import InconclusiveError, InputError
from .kgraph import KGraph
from .transfer import TransferSystem
from .tuples import TupleFamily


def _successors(system) -> tuple[int, int, list[dict[int, set[int]]]]:
    """``(k, n, succ)`` with ``succ[i][v]`` the sources of color-``i+1`` edges into ``v``."""
    if isinstance(system, KGraph):
        where = {v: t for t, v in enumerate(system.vertices)}
        succ = [{v: set() for v in range(system.n)} for _ in range(system.k)]
        for e in system.edges:
            succ[e.color - 1][where[e.range]].add(where[e.source])
        return system.k, system.n, succ
    if hasattr(system, "carrier"):
        succ = [{v: set() for v in range(system.n)} for _ in range(system.d)]
        for i, m in enumerate(system.maps):
            for v, w in enumerate(m):
                if w is not None:
                    succ[i][w].add(v)
        return system.d, system.n, succ
    if isinstance(system, TransferSystem):
        succ = [{v: {w for w in range(system.n) if (row[v] >> w) & 1} for v in range(system.n)}
                for row in system.images]
        return system.k, system.n, succ
    raise InputError(f"cannot read a system from {type(system).__name__}")


def _as_set(mask: int) -> set[int]:
    return {t for t in range(mask.bit_length()) if (mask >> t) & 1}


def _as_mask(s) -> int:
    return sum(1 << t for t in s)


def _subsets(universe: list[int]):
    for r in range(len(universe) + 1):
        for combo in combinations(universe, r):
            yield set(combo)


# -- rank one ------------------------------------------------------------------

def katsura_tpairs(system) -> list[tuple[int, int]]:
    """All pairs ``(H0, H1)``: ``H0`` hereditary, ``H0 <= H1 <= J(H0)``.

    ``J(H0)`` consists of the vertices ``v`` for which "every edge into ``v``
    comes from ``H0``" forces ``v`` into ``H0``.
    """
    k, n, succ = _successors(system)
    if k != 1:
        raise InputError("Katsura pairs need a rank-one system")
    succ = succ[0]
    everything = list(range(n))
    pairs = []
    for H0 in _subsets(everything):
        if any(not succ[v] <= H0 for v in H0):
            continue
        J = {v for v in everything if not (succ[v] <= H0) or v in H0}
        rest = sorted(J - H0)
        for extra in _subsets(rest):
            pairs.append((_as_mask(H0), _as_mask(H0 | extra)))
    pairs.sort(key=lambda p: (bin(p[0]).count("1"), p[0], bin(p[1]).count("1"), p[1]))
    return pairs


# -- eventual containment by brute force -------------------------------------------

def _apply(succ_i: dict[int, set[int]], state: frozenset) -> frozenset:
    out = set()
    for v in state:
        out |= succ_i[v]
    return frozenset(out)


def _orbit_data(succ, active: list[int], start: frozenset):
    orbit = {start}
    queue = [start]
    while queue:
        S = queue.pop()
        for i in active:
            nxt = _apply(succ[i], S)
            if nxt not in orbit:
                orbit.add(nxt)
                queue.append(nxt)
    index, period = {}, {}
    for i in active:
        r, q = 0, 1
        for S in orbit:
            seen_at = {S: 0}
            while True:
                S = _apply(succ[i], S)
                if S in seen_at:
                    r = max(r, seen_at[S])
                    q = lcm(q, len(seen_at) - seen_at[S])
                    break
                seen_at[S] = len(seen_at)
        index[i], period[i] = r, q
    return index, period


def boxed_eventual(system, active, start: int, target: int, box=None) -> bool:
    """Evaluate the eventual-containment quantifier inside a finite box.

    ``active`` is a collection of 1-based colors.  The box must reach at
    least ``r + 2q`` in every active color; ``None`` picks exactly that.
    """
    k, _, succ = _successors(system)
    colors = sorted(c - 1 for c in active)
    return _boxed(succ, k, colors, frozenset(_as_set(start)), _as_set(target), box)


def _boxed(succ, k: int, colors: list[int], start: frozenset, target: set[int], box) -> bool:
    if not colors:
        return start <= target
    index, period = _orbit_data(succ, colors, start)
    need = {i: index[i] + 2 * period[i] for i in colors}
    if box is None:
        box = [need.get(i, 0) for i in range(k)]
    for i in colors:
        if box[i] < need[i]:
            raise InconclusiveError(
                f"box {tuple(box)} is below index + 2 * period = {need[i]} in color {i + 1}")
    # walk to the corner m = box - q, then sweep one full period per color;
    # every residue class beyond the index shows up in that window
    corner = start
    for i in colors:
        for _ in range(box[i] - period[i]):
            corner = _apply(succ[i], corner)
    window = {corner}
    for i in colors:
        swept = set()
        for S in window:
            for _ in range(period[i] + 1):
                swept.add(S)
                S = _apply(succ[i], S)
        window = swept
    return all(S <= target for S in window)


# -- the absorbent-family route to NT ----------------------------------------------

def nt_via_absorbent(system, H: TupleFamily) -> bool:
    k, n, succ = _successors(system)
    if H.k != k:
        raise InputError("family has the wrong rank")
    comps = {F: _as_set(H[F]) for F in range(1 << k)}
    H0 = comps[0]
    everything = set(range(n))
    # hereditary families (every F, every color outside F)
    for F, S in comps.items():
        for i in range(k):
            if not (F >> i) & 1 and any(not succ[i][v] <= S for v in S):
                return False
    # covariance: H_F inside H0 plus the non-F-sources of the quotient
    gamma = [{v: succ[i][v] - H0 for v in everything - H0} for i in range(k)]
    for F in range(1, 1 << k):
        allowed = H0 | {v for v in everything - H0 if any(gamma[i][v] for i in range(k) if (F >> i) & 1)}
        if not comps[F] <= allowed:
            return False
    # partial order over all comparable pairs
    for F in range(1 << k):
        for D in range(1 << k):
            if F & D == F and not comps[F] <= comps[D]:
                return False
    # absorbent in the quotient, with G_F = H_F minus H0
    top = (1 << k) - 1
    G = {F: comps[F] - H0 for F in range(1 << k)}
    succ_gamma = [{v: (gamma[i][v] if v in gamma[i] else set()) for v in everything} for i in range(k)]
    for F in range(1, top):
        others = [i for i in range(k) if not (F >> i) & 1]
        inside = [i for i in range(k) if (F >> i) & 1]
        meet_above = set(everything - H0)
        for D in range(1 << k):
            if D & F == F and D != F:
                meet_above &= G[D]
        for v in everything - H0:
            if v in G[F]:
                continue
            reach = {v}
            frontier = [v]
            while frontier:
                w = frontier.pop()
                for i in others:
                    for x in gamma[i][w]:
                        if x not in reach:
                            reach.add(x)
                            frontier.append(x)
            tracing = all(any(gamma[i][w] for i in inside) for w in reach)
            if tracing and reach <= meet_above and _boxed(succ_gamma, k, others, frozenset({v}), G[F], None):
                return False
    return True


# -- single-vertex sourceless graphs ----------------------------------------------

def antichains(k: int) -> list[list[int]]:
    """All antichains of subsets of ``[k]`` (color-set masks)."""
    sets = list(range(1 << k))
    out = []
    for chosen in range(1 << len(sets)):
        members = [F for F in sets if (chosen >> F) & 1]
        if all(not (a & b == a or a & b == b) for a, b in combinations(members, 2)):
            out.append(members)
    return out


def antichain_families(k) -> list[TupleFamily]:
    """Families ``H_F = {v}`` iff ``F`` lies above some member of an antichain.

    ``k`` may be a rank or a single-vertex graph.
    """
    if isinstance(k, KGraph):
        if k.n != 1:
            raise InputError("antichain families describe single-vertex graphs only")
        k = k.k
    out = []
    for members in antichains(k):
        comps = [1 if any(a & F == a for a in members) else 0 for F in range(1 << k)]
        out.append(TupleFamily(k, comps))
    return out
