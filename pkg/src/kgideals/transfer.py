"""Commuting transfer maps on vertex subsets.

``T_i(S)`` is the set of sources of color-``i`` edges whose range lies in ``S``
(for a dynamical system it is the preimage ``sigma_i^{-1}(S)``).  Each map is
union-additive, so it is stored by the images of singletons.  For a degree
``n`` the composite ``T^n({v})`` is the source set ``s(v Lambda^n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bits import full_mask, iter_bits


@dataclass(frozen=True)
class TransferSystem:
    k: int
    n: int
    images: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.images) != self.k:
            raise ValueError(f"expected {self.k} maps, got {len(self.images)}")
        for row in self.images:
            if len(row) != self.n:
                raise ValueError("every map needs one image per vertex")

    @property
    def full(self) -> int:
        return full_mask(self.n)

    @property
    def all_colors(self) -> int:
        return full_mask(self.k)

    def apply(self, color: int, S: int) -> int:
        row = self.images[color - 1]
        out = 0
        for v in iter_bits(S):
            out |= row[v]
        return out

    def apply_degree(self, degree, S: int) -> int:
        for i, times in enumerate(degree):
            for _ in range(times):
                if not S:
                    return 0
                S = self.apply(i + 1, S)
        return S

    def closure(self, colors: int, S: int) -> int:
        """Smallest superset of ``S`` closed under ``T_i`` for colors in the mask."""
        rows = [self.images[i] for i in iter_bits(colors)]
        seen = S
        frontier = S
        while frontier:
            new = 0
            for v in iter_bits(frontier):
                for row in rows:
                    new |= row[v]
            frontier = new & ~seen
            seen |= frontier
        return seen

    def is_closed(self, colors: int, S: int) -> bool:
        for i in iter_bits(colors):
            if self.apply(i + 1, S) & ~S:
                return False
        return True

    def interior(self, colors: int, X: int) -> int:
        """Largest subset of ``X`` closed under the given colors.

        Equivalently ``{v : closure({v}) is inside X}``.
        """
        rows = [self.images[i] for i in iter_bits(colors)]
        Y = X
        changed = True
        while changed:
            changed = False
            for v in iter_bits(Y):
                for row in rows:
                    if row[v] & ~Y:
                        Y &= ~(1 << v)
                        changed = True
                        break
        return Y

    def restrict(self, keep: int) -> "TransferSystem":
        """Transfer maps of the quotient graph living on ``keep``.

        Vertices off ``keep`` lose all their edges and every image is cut
        down to ``keep``; the vertex indexing is unchanged.
        """
        images = tuple(
            tuple((row[v] & keep) if (keep >> v) & 1 else 0 for v in range(self.n))
            for row in self.images
        )
        return TransferSystem(self.k, self.n, images)

    def commutation_failures(self) -> list[tuple[int, int, int]]:
        """Triples ``(i, j, v)`` with ``T_i T_j {v} != T_j T_i {v}``."""
        bad = []
        for i in range(1, self.k + 1):
            for j in range(i + 1, self.k + 1):
                for v in range(self.n):
                    s = 1 << v
                    if self.apply(i, self.apply(j, s)) != self.apply(j, self.apply(i, s)):
                        bad.append((i, j, v))
        return bad

    def commutes(self) -> bool:
        return not self.commutation_failures()


def as_transfer(system) -> TransferSystem:
    """Accept a TransferSystem or anything exposing ``transfer_system()``."""
    if isinstance(system, TransferSystem):
        return system
    return system.transfer_system()


def closed_sets(ts: TransferSystem, colors: int, base: int, bound: int):
    """All sets ``S`` with ``base <= S <= bound`` closed under the given colors.

    Sets come out in no particular order, each exactly once.
    """
    start = ts.closure(colors, base)
    if start & ~bound:
        return

    def grow(S: int, excluded: int):
        free = bound & ~S & ~excluded
        if not free:
            yield S
            return
        v = (free & -free).bit_length() - 1
        bigger = ts.closure(colors, S | 1 << v)
        if not (bigger & ~bound) and not (bigger & excluded):
            yield from grow(bigger, excluded)
        yield from grow(S, excluded | 1 << v)

    yield from grow(start, 0)
