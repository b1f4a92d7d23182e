"""Eventual containment for commuting transfer maps.

Decides whether ``T^n(start)`` lies in ``target`` for all large enough
degrees ``n`` supported on a set of active colors.  Each active generator
acts on the finite orbit of ``start``; once its index ``r_i`` and period
``q_i`` on that orbit are known, commutativity gives
``T^n = T^(r + ((n - r) mod q))`` for ``n >= r``, so only the residue box
``r + [0, q)`` needs checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .bits import iter_bits
from .errors import PreconditionError
from .transfer import TransferSystem, as_transfer


@dataclass(frozen=True)
class EventualBehavior:
    """Index and period of every generator acting on the orbit of ``start``.

    Inactive generators get index 0 and period 1.
    """

    index: tuple[int, ...]
    period: tuple[int, ...]
    orbit: frozenset[int]


def _step(ts: TransferSystem, i: int, S: int) -> int:
    row = ts.images[i]
    out = 0
    for v in iter_bits(S):
        out |= row[v]
    return out


def _orbit(ts: TransferSystem, active: int, start: int) -> list[int]:
    seen = {start}
    order = [start]
    for S in order:
        for i in iter_bits(active):
            nxt = _step(ts, i, S)
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
    return order


def _index_period(ts: TransferSystem, i: int, orbit: list[int]) -> tuple[int, int]:
    """First repeat in the sequence of powers ``t_i^0, t_i^1, ...`` on the orbit."""
    current = tuple(orbit)
    first_seen = {current: 0}
    m = 0
    while True:
        current = tuple(_step(ts, i, S) for S in current)
        m += 1
        if current in first_seen:
            r = first_seen[current]
            return r, m - r
        first_seen[current] = m


@lru_cache(maxsize=None)
def _commutes(ts: TransferSystem) -> bool:
    return ts.commutes()


def _require_commuting(ts: TransferSystem) -> None:
    if not _commutes(ts):
        i, j, v = ts.commutation_failures()[0]
        raise PreconditionError(f"transfer maps {i} and {j} do not commute at vertex index {v}", (i, j, v))


def eventual_behavior(system, active: int, start: int) -> EventualBehavior:
    ts = as_transfer(system)
    orbit = _orbit(ts, active, start)
    index, period = [0] * ts.k, [1] * ts.k
    for i in iter_bits(active):
        index[i], period[i] = _index_period(ts, i, orbit)
    return EventualBehavior(tuple(index), tuple(period), frozenset(orbit))


@lru_cache(maxsize=65536)
def _limit_union(ts: TransferSystem, active: int, start: int) -> int:
    """Union of ``T^n(start)`` over all ``n >= r`` supported on ``active``."""
    beh = eventual_behavior(ts, active, start)
    colors = list(iter_bits(active))
    S = start
    for i in colors:
        for _ in range(beh.index[i]):
            S = _step(ts, i, S)
    union = 0
    # walk the residue box one generator at a time
    frontier = {S}
    for i in colors:
        spread = set()
        for T in frontier:
            for _ in range(beh.period[i]):
                spread.add(T)
                T = _step(ts, i, T)
        frontier = spread
    for T in frontier:
        union |= T
    return union


def eventual_containment(system, active: int, start: int, target: int) -> bool:
    """True iff some ``m`` on ``active`` has ``T^n(start) <= target`` for all ``n >= m``."""
    ts = as_transfer(system)
    if not active:
        return start & ~target == 0
    _require_commuting(ts)
    return _limit_union(ts, active, start) & ~target == 0


def eventually_inside(system, active: int, target: int) -> int:
    """Vertices ``v`` whose singleton is eventually contained in ``target``."""
    ts = as_transfer(system)
    out = 0
    for v in range(ts.n):
        if eventual_containment(ts, active, 1 << v, target):
            out |= 1 << v
    return out
