"""Commuting partial self-maps of a finite set.

A system ``(V, sigma_1, ..., sigma_d)`` acts on functions on ``V`` by
``alpha_i(f) = f o sigma_i`` (zero off the domain), so ``alpha_i`` sends the
point mass at ``v`` to the indicator of ``sigma_i^{-1}(v)``.  Ideals of the
coefficient algebra are vertex sets, and the transfer map of color ``i`` is
the preimage map of ``sigma_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence

from .bits import full_mask, iter_bits
from .errors import InputError, PreconditionError
from .eventual import eventually_inside
from .kgraph import Edge, KGraph, ValidationReport, Violation
from .transfer import TransferSystem, closed_sets
from .tuples import (
    OK,
    TupleFamily,
    Verdict,
    components_above,
    failure,
    color_sets,
    is_partially_ordered,
    proper_nonempty,
)


@dataclass(frozen=True)
class DynSys:
    """``maps[i][v]`` is the index of ``sigma_{i+1}(v)``, or ``None`` when undefined."""

    d: int
    carrier: tuple[str, ...]
    maps: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "maps", tuple(tuple(m) for m in self.maps))
        if self.d < 1:
            raise InputError("rank must be positive")
        if len(set(self.carrier)) != len(self.carrier):
            raise InputError("duplicate carrier points")
        if len(self.maps) != self.d:
            raise InputError(f"expected {self.d} maps, got {len(self.maps)}")
        for m in self.maps:
            if len(m) != len(self.carrier):
                raise InputError("every map needs one entry per carrier point")
            for w in m:
                if w is not None and not 0 <= w < len(self.carrier):
                    raise InputError(f"image index {w} outside the carrier")

    @classmethod
    def from_pairs(cls, d: int, carrier: Sequence[str], maps: Mapping[int, Mapping[str, str]]) -> "DynSys":
        """Build from ``{color: {v: sigma(v)}}``; omitted points are undefined."""
        index = {v: t for t, v in enumerate(carrier)}
        rows = []
        for color in range(1, d + 1):
            row: list[int | None] = [None] * len(carrier)
            for v, w in maps.get(color, {}).items():
                if v not in index or w not in index:
                    raise InputError(f"unknown carrier point in pair ({v!r}, {w!r})")
                row[index[v]] = index[w]
            rows.append(row)
        for color in maps:
            if not 1 <= color <= d:
                raise InputError(f"map color {color} outside 1..{d}")
        return cls(d, tuple(carrier), tuple(rows))

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.carrier

    @property
    def n(self) -> int:
        return len(self.carrier)

    @property
    def k(self) -> int:
        return self.d

    def image(self, color: int, v: int | None) -> int | None:
        return None if v is None else self.maps[color - 1][v]

    def mask(self, names) -> int:
        index = {v: t for t, v in enumerate(self.carrier)}
        try:
            return sum(1 << index[v] for v in set(names))
        except KeyError as exc:
            raise InputError(f"unknown carrier point {exc.args[0]!r}") from None

    def names(self, mask: int) -> list[str]:
        return [self.carrier[t] for t in iter_bits(mask)]

    @cached_property
    def _preimages(self) -> TransferSystem:
        rows = []
        for m in self.maps:
            row = [0] * self.n
            for v, w in enumerate(m):
                if w is not None:
                    row[w] |= 1 << v
            rows.append(tuple(row))
        return TransferSystem(self.d, self.n, tuple(rows))

    def transfer_system(self) -> TransferSystem:
        return dyn_transfer(self)


def validate_dynsys(D: DynSys) -> ValidationReport:
    def show(x):
        return "undefined" if x is None else D.carrier[x]

    report = ValidationReport()
    for i in range(1, D.d + 1):
        for j in range(i + 1, D.d + 1):
            for v in range(D.n):
                a = D.image(i, D.image(j, v))
                b = D.image(j, D.image(i, v))
                if a != b:
                    report.violations.append(Violation(
                        "non-commuting",
                        f"sigma_{i} sigma_{j}({D.carrier[v]}) = {show(a)} but "
                        f"sigma_{j} sigma_{i}({D.carrier[v]}) = {show(b)}",
                        (i, j, D.carrier[v]),
                    ))
    return report


def dyn_transfer(D: DynSys) -> TransferSystem:
    report = validate_dynsys(D)
    if not report.ok:
        raise PreconditionError(report.violations[0].message, report.violations[0].witness)
    return D._preimages


def to_kgraph(D: DynSys) -> KGraph:
    """The k-graph whose color-``i`` edges are ``v -> sigma_i(v)`` (range ``sigma_i(v)``).

    Commuting partial maps make every bicolored path factor uniquely, so the
    squares are forced: ``(sigma_j w, i)(w, j) = (sigma_i w, j)(w, i)``.
    """
    dyn_transfer(D)

    def eid(v: int, i: int) -> str:
        return f"{D.carrier[v]}:{i}"

    edges = []
    for i in range(1, D.d + 1):
        for v in range(D.n):
            w = D.image(i, v)
            if w is not None:
                edges.append(Edge(eid(v, i), i, D.carrier[w], D.carrier[v]))
    squares = []
    for i in range(1, D.d + 1):
        for j in range(i + 1, D.d + 1):
            for w in range(D.n):
                if D.image(i, D.image(j, w)) is not None:
                    squares.append((eid(D.image(j, w), i), eid(w, j), eid(D.image(i, w), j), eid(w, i)))
    return KGraph(D.d, D.carrier, tuple(edges), tuple(squares))


def _pullback_inside(ts: TransferSystem, F: int, H: int) -> int:
    """``W_F``: points whose preimages under every ``sigma_i``, ``i`` in ``F``, lie in ``H``."""
    out = 0
    for v in range(ts.n):
        if all(ts.images[i][v] & ~H == 0 for i in iter_bits(F)):
            out |= 1 << v
    return out


def dyn_is_nt_tuple(D: DynSys, H: TupleFamily) -> Verdict:
    ts = dyn_transfer(D)
    if H.k != D.d:
        raise InputError(f"family has rank {H.k} but the system has rank {D.d}")
    if any(c & ~ts.full for c in H.components):
        raise InputError("family mentions points outside the carrier")
    top = ts.all_colors
    H0 = H[0]
    # (ii) first for the empty component, the other conditions presuppose it
    for i in range(D.d):
        escaped = ts.apply(i + 1, H0) & ~H0
        if escaped:
            return failure("(ii)", 0, escaped, f"color {i + 1}")
    for F in color_sets(D.d)[1:]:
        bad = H[F] & _pullback_inside(ts, F, H0) & ~H0
        if bad:
            return failure("(i)", F, bad)
    for F in color_sets(D.d):
        for i in iter_bits(top & ~F):
            escaped = ts.apply(i + 1, H[F]) & ~H[F]
            if escaped:
                return failure("(ii)", F, escaped, f"color {i + 1}")
    po = is_partially_ordered(H)
    if not po:
        return Verdict(False, "(iii)", po.F, po.vertex, po.detail)
    for F in proper_nonempty(D.d):
        comp = top & ~F
        I1 = ts.interior(comp, H0 | (ts.full & ~_pullback_inside(ts, F, H0)))
        I2 = ts.interior(comp, components_above(H, F, ts.full))
        I3 = eventually_inside(ts, comp, H[F])
        missing = I1 & I2 & I3 & ~H[F]
        if missing:
            return failure("(iv)", F, missing)
    return OK


def is_cototal(D: DynSys) -> bool:
    ts = D._preimages
    return all(row[v] for row in ts.images for v in range(D.n))


def dyn_invariant_subsets(D: DynSys) -> list[int]:
    """Subsets invariant under preimages and under the co-preimage operator, in mask order."""
    ts = dyn_transfer(D)
    if not is_cototal(D):
        for i, row in enumerate(ts.images):
            for v in range(D.n):
                if not row[v]:
                    raise PreconditionError(
                        f"sigma_{i + 1} misses {D.carrier[v]}, so alpha_{i + 1} is not injective",
                        (i + 1, D.carrier[v]))
    out = []
    for H in closed_sets(ts, ts.all_colors, 0, ts.full):
        if all(_pullback_inside(ts, 1 << i, H) & ~H == 0 for i in range(D.d)):
            out.append(H)
    return sorted(out)


def is_automorphic(D: DynSys) -> bool:
    return all(None not in m and len(set(m)) == D.n for m in D.maps)


def forward_invariant_subsets(D: DynSys) -> list[int]:
    """Brute force over all subsets: ``sigma_i(H) = H`` for every ``i``."""
    out = []
    for H in range(1 << D.n):
        if all(
            sum(1 << m[v] for v in iter_bits(H) if m[v] is not None) == H
            for m in D.maps
        ):
            out.append(H)
    return out


def no_family(D: DynSys, H: int) -> TupleFamily:
    """The family ``(H, V, ..., V)``."""
    full = full_mask(D.n)
    return TupleFamily(D.d, [H] + [full] * ((1 << D.d) - 1))
