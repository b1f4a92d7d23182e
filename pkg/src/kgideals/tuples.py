"""Vertex-level 2^k-tuples: closures, the one-step iteration and NT/NO/(M) tests.

A ``TupleFamily`` stores one vertex mask per color set ``F``; component
``F`` sits at position ``F`` (the color-set bit mask).  Every function takes
a "system": a ``KGraph``, a ``DynSys`` or a bare ``TransferSystem``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .bits import format_colorset, full_mask, iter_bits, lowest, popcount
from .errors import InputError, PreconditionError
from .eventual import eventually_inside
from .kgraph import as_fmask, f_tracing, jf_vertices
from .transfer import TransferSystem, as_transfer


def color_sets(k: int) -> list[int]:
    """All color-set masks ordered by size, then by mask."""
    return sorted(range(1 << k), key=lambda F: (popcount(F), F))


def proper_nonempty(k: int) -> list[int]:
    top = full_mask(k)
    return [F for F in color_sets(k) if F and F != top]


@dataclass(frozen=True, order=False)
class TupleFamily:
    k: int
    components: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != 1 << self.k:
            raise InputError(f"a family of rank {self.k} needs {1 << self.k} components")

    @classmethod
    def constant(cls, k: int, mask: int) -> "TupleFamily":
        return cls(k, (mask,) * (1 << k))

    @classmethod
    def empty(cls, k: int) -> "TupleFamily":
        return cls.constant(k, 0)

    @classmethod
    def from_mapping(cls, k: int, parts: Mapping) -> "TupleFamily":
        """Build from ``{F: mask}`` where ``F`` is a mask or a collection of colors."""
        comps = [0] * (1 << k)
        for F, mask in parts.items():
            comps[as_fmask(F)] = mask
        return cls(k, comps)

    def __getitem__(self, F) -> int:
        return self.components[as_fmask(F)]

    def replace(self, F, mask: int) -> "TupleFamily":
        comps = list(self.components)
        comps[as_fmask(F)] = mask
        return TupleFamily(self.k, comps)

    def __le__(self, other: "TupleFamily") -> bool:
        return all(a & ~b == 0 for a, b in zip(self.components, other.components))

    def __and__(self, other: "TupleFamily") -> "TupleFamily":
        return TupleFamily(self.k, [a & b for a, b in zip(self.components, other.components)])

    def __or__(self, other: "TupleFamily") -> "TupleFamily":
        return TupleFamily(self.k, [a | b for a, b in zip(self.components, other.components)])

    def sort_key(self) -> tuple:
        return tuple((popcount(self.components[F]), self.components[F]) for F in color_sets(self.k))


# -- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    """Outcome of a decision procedure; falsy when the property fails.

    ``F`` is the color set where the failure was found, ``vertex`` the least
    witness vertex index and ``detail`` extra context (e.g. an offending color).
    """

    ok: bool
    condition: str | None = None
    F: int | None = None
    vertex: int | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok

    def describe(self, names: Sequence[str] | None = None) -> str:
        if self.ok:
            return "ok"
        parts = [f"condition {self.condition} fails"]
        if self.F is not None:
            parts.append(f"at F={format_colorset(self.F)}")
        text = " ".join(parts)
        if self.vertex is not None:
            name = names[self.vertex] if names is not None else str(self.vertex)
            text += f", witness {name}"
        if self.detail:
            text += f" ({self.detail})"
        return text


OK = Verdict(True)


def vertex_names(system) -> list[str]:
    names = getattr(system, "vertices", None)
    if names is not None:
        return list(names)
    return [str(v) for v in range(as_transfer(system).n)]


def failure(condition: str, F: int | None, witness_mask: int, detail: str = "") -> Verdict:
    return Verdict(False, condition, F, lowest(witness_mask) if witness_mask else None, detail)


def _check_shape(ts: TransferSystem, H: TupleFamily) -> None:
    if H.k != ts.k:
        raise InputError(f"family has rank {H.k} but the system has rank {ts.k}")
    if any(c & ~ts.full for c in H.components):
        raise InputError("family mentions vertices outside the vertex set")


# -- family predicates and closures --------------------------------------------

def is_hereditary_family(system, H: TupleFamily) -> Verdict:
    """``T_i(H_F) <= H_F`` for every ``F`` and every color ``i`` outside ``F``."""
    ts = as_transfer(system)
    _check_shape(ts, H)
    for F in color_sets(ts.k):
        for i in iter_bits(ts.all_colors & ~F):
            escaped = ts.apply(i + 1, H[F]) & ~H[F]
            if escaped:
                return failure("hereditary", F, escaped, f"color {i + 1}")
    return OK


def is_partially_ordered(H: TupleFamily) -> Verdict:
    for F in color_sets(H.k):
        for i in range(H.k):
            if not (F >> i) & 1:
                gap = H[F] & ~H[F | 1 << i]
                if gap:
                    return failure("partially ordered", F, gap, f"not inside {format_colorset(F | 1 << i)}")
    return OK


def inv_closure(system, H: TupleFamily) -> TupleFamily:
    ts = as_transfer(system)
    return TupleFamily(H.k, [ts.closure(ts.all_colors & ~F, H[F]) for F in range(1 << H.k)])


def po_closure(H: TupleFamily) -> TupleFamily:
    comps = []
    for F in range(1 << H.k):
        acc = 0
        D = F
        while True:
            acc |= H[D]
            if D == 0:
                break
            D = (D - 1) & F
        comps.append(acc)
    return TupleFamily(H.k, comps)


def tracing_family(system) -> TupleFamily:
    """The family ``F -> f_tracing(F)`` with empty ``∅``-component."""
    ts = as_transfer(system)
    return TupleFamily(ts.k, [f_tracing(ts, F) if F else 0 for F in range(1 << ts.k)])


def components_above(H: TupleFamily, F: int, full: int) -> int:
    """Intersection of ``H_D`` over ``D`` strictly containing ``F``."""
    acc = full
    for D in range(1 << H.k):
        if D & F == F and D != F:
            acc &= H[D]
    return acc


def rf_condition_sets(system, H: TupleFamily, F) -> tuple[int, int, int]:
    ts = as_transfer(system)
    F = as_fmask(F)
    if F == 0 or F == ts.all_colors:
        raise InputError("F must be a nonempty proper color set")
    _check_shape(ts, H)
    comp = ts.all_colors & ~F
    H1 = ts.interior(comp, jf_vertices(ts, F, H[0]))
    H2 = ts.interior(comp, components_above(H, F, ts.full))
    H3 = eventually_inside(ts, comp, H[F])
    return H1, H2, H3


def is_nt_tuple(system, H: TupleFamily) -> Verdict:
    """Row-finite NT test: conditions (i) to (iv) in order."""
    ts = as_transfer(system)
    _check_shape(ts, H)
    if not ts.is_closed(ts.all_colors, H[0]):
        escaped = 0
        for i in range(ts.k):
            escaped |= ts.apply(i + 1, H[0]) & ~H[0]
        return failure("(ii)", 0, escaped, "the ∅-component is not hereditary")
    for F in color_sets(ts.k)[1:]:
        outside = H[F] & ~jf_vertices(ts, F, H[0])
        if outside:
            return failure("(i)", F, outside)
    her = is_hereditary_family(ts, H)
    if not her:
        return Verdict(False, "(ii)", her.F, her.vertex, her.detail)
    po = is_partially_ordered(H)
    if not po:
        return Verdict(False, "(iii)", po.F, po.vertex, po.detail)
    for F in proper_nonempty(ts.k):
        H1, H2, H3 = rf_condition_sets(ts, H, F)
        missing = H1 & H2 & H3 & ~H[F]
        if missing:
            return failure("(iv)", F, missing)
    return OK


def is_no_tuple(system, H: TupleFamily) -> Verdict:
    nt = is_nt_tuple(system, H)
    if not nt:
        return nt
    return _contains(H, tracing_family(system), "tracing")


def is_relative_no_tuple(system, H: TupleFamily, K: TupleFamily) -> Verdict:
    nt = is_nt_tuple(system, H)
    if not nt:
        return nt
    return _contains(H, K, "relative")


def _contains(H: TupleFamily, K: TupleFamily, condition: str) -> Verdict:
    if K.k != H.k:
        raise InputError("families of different rank")
    for F in color_sets(H.k):
        missing = K[F] & ~H[F]
        if missing:
            return failure(condition, F, missing)
    return OK


# -- the one-step iteration and maximalisation -----------------------------------

def check_e_family(system, G: TupleFamily) -> Verdict:
    ts = as_transfer(system)
    _check_shape(ts, G)
    if G[0]:
        return failure("(E)", 0, G[0], "the ∅-component must be empty")
    trace = tracing_family(ts)
    for F in color_sets(ts.k)[1:]:
        extra = G[F] & ~trace[F]
        if extra:
            return failure("(E)", F, extra, "vertex is not F-tracing")
    her = is_hereditary_family(ts, G)
    if not her:
        return her
    return is_partially_ordered(G)


def _require(verdict: Verdict, system, what: str) -> None:
    if not verdict:
        raise PreconditionError(f"{what}: {verdict.describe(vertex_names(system))}",
                                (verdict.F, verdict.vertex))


def iterate_once(system, G: TupleFamily, check: bool = True) -> TupleFamily:
    ts = as_transfer(system)
    if check:
        _require(check_e_family(ts, G), system, "not an (E)-family")
    top = ts.all_colors
    comps = [0] * (1 << ts.k)
    comps[top] = G[top]
    for F in proper_nonempty(ts.k):
        comp = top & ~F
        comps[F] = (f_tracing(ts, F)
                    & ts.interior(comp, components_above(G, F, ts.full))
                    & eventually_inside(ts, comp, G[F]))
    return TupleFamily(ts.k, comps)


def iterate(system, G: TupleFamily, times: int, check: bool = True) -> TupleFamily:
    for _ in range(times):
        G = iterate_once(system, G, check)
    return G


def to_quotient(system, H: TupleFamily) -> tuple[TransferSystem, TupleFamily]:
    """Quotient system off ``H_∅`` and the family ``(H_F ∪ H_∅) \\ H_∅`` on it."""
    ts = as_transfer(system)
    _check_shape(ts, H)
    H0 = H[0]
    if not ts.is_closed(ts.all_colors, H0):
        raise PreconditionError("the ∅-component is not hereditary")
    quotient = ts.restrict(ts.full & ~H0)
    return quotient, TupleFamily(ts.k, [(c | H0) & ~H0 for c in H.components])


def pull_back(G: TupleFamily, H0: int) -> TupleFamily:
    return TupleFamily(G.k, [H0] + [c | H0 for c in G.components[1:]])


def maximalise(system, H: TupleFamily) -> TupleFamily:
    """The largest NT-tuple inducing the same ideal as ``H``."""
    quotient, G = to_quotient(system, H)
    trace = tracing_family(quotient)
    for F in color_sets(quotient.k)[1:]:
        extra = G[F] & ~trace[F]
        if extra:
            v = lowest(extra)
            raise PreconditionError(
                f"not a relative (E)-family: vertex {vertex_names(system)[v]} is not "
                f"{format_colorset(F)}-tracing in the quotient", (F, v))
    G = po_closure(inv_closure(quotient, G))
    G = iterate(quotient, G, quotient.k - 1, check=False)
    return pull_back(G, H[0])


def is_m_tuple(system, G: TupleFamily) -> Verdict:
    ts = as_transfer(system)
    _check_shape(ts, G)
    if G[0]:
        return failure("(M)", 0, G[0], "the ∅-component must be empty")
    for F in color_sets(ts.k)[1:]:
        outside = G[F] & ~jf_vertices(ts, F, 0)
        if outside:
            return failure("(M)", F, outside, "outside the covariance vertices")
    base = check_e_family(ts, G)
    if not base:
        return Verdict(False, "(M)", base.F, base.vertex, base.detail)
    grown = iterate_once(ts, G, check=False)
    for F in color_sets(ts.k):
        extra = grown[F] & ~G[F]
        if extra:
            return failure("(M)", F, extra, "added by one iteration")
    return OK


# -- single ideals -------------------------------------------------------------

def preimage_core(system, F, H0: int) -> int:
    """Vertices all of whose ``F``-colored edges have source in ``H0``."""
    ts = as_transfer(system)
    out = 0
    for v in range(ts.n):
        if all(ts.images[i][v] & ~H0 == 0 for i in iter_bits(as_fmask(F))):
            out |= 1 << v
    return out


def is_neg_invariant(system, H0: int) -> Verdict:
    ts = as_transfer(system)
    for F in color_sets(ts.k)[1:]:
        bad = f_tracing(ts, F) & preimage_core(ts, F, H0) & ~H0
        if bad:
            return failure("negative invariance", F, bad)
    return OK


def participates_in_no_tuple(system, H0: int) -> Verdict:
    ts = as_transfer(system)
    if not ts.is_closed(ts.all_colors, H0):
        escaped = 0
        for i in range(ts.k):
            escaped |= ts.apply(i + 1, H0) & ~H0
        return failure("hereditary", None, escaped)
    return is_neg_invariant(ts, H0)

