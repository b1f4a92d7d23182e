"""Finite k-graphs presented by a colored skeleton and a table of squares.

A square ``(e, f, f2, e2)`` records the factorisation ``e f = f2 e2`` of a
bicolored path, where ``e, e2`` have color ``i`` and ``f, f2`` have color
``j > i``.  Paths are kept in color-nondecreasing normal form; the square
table is used to commute adjacent edges of different colors.

Vertex sets are integer bit masks over ``KGraph.vertices`` (bit ``t`` is the
``t``-th declared vertex) and color sets are masks with bit ``i-1`` for
color ``i``.  Use ``KGraph.mask`` / ``KGraph.names`` to convert.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import permutations
from typing import Iterable, Sequence

from .bits import full_mask, iter_bits, mask_of
from .errors import CapacityError, CompositionError, InputError, PreconditionError
from .transfer import TransferSystem, as_transfer

MAX_RANK = 8
MAX_VERTICES = 64
MAX_PATH_LENGTH = 16


# -- degrees ---------------------------------------------------------------

def deg_le(m: Sequence[int], n: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(m, n))


def deg_join(m: Sequence[int], n: Sequence[int]) -> tuple[int, ...]:
    return tuple(max(a, b) for a, b in zip(m, n))


def deg_meet(m: Sequence[int], n: Sequence[int]) -> tuple[int, ...]:
    return tuple(min(a, b) for a, b in zip(m, n))


def deg_add(m: Sequence[int], n: Sequence[int]) -> tuple[int, ...]:
    return tuple(a + b for a, b in zip(m, n))


def deg_sub(m: Sequence[int], n: Sequence[int]) -> tuple[int, ...]:
    return tuple(a - b for a, b in zip(m, n))


def unit(k: int, color: int) -> tuple[int, ...]:
    return tuple(1 if i == color - 1 else 0 for i in range(k))


def support(n: Sequence[int]) -> int:
    """Color mask of the nonzero entries."""
    return mask_of(i for i, a in enumerate(n) if a)


def _color_word(n: Sequence[int]) -> list[int]:
    return [i + 1 for i, a in enumerate(n) for _ in range(a)]


def as_fmask(F) -> int:
    """Color set given either as a mask or as an iterable of 1-based colors."""
    if isinstance(F, int):
        return F
    return mask_of(c - 1 for c in F)


# -- data model ------------------------------------------------------------

@dataclass(frozen=True)
class Edge:
    id: str
    color: int
    range: str
    source: str


@dataclass(frozen=True)
class Path:
    range: str
    source: str
    edges: tuple[str, ...]
    degree: tuple[int, ...]

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def __str__(self):
        return "·".join(self.edges) if self.edges else self.range


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    witness: tuple = ()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __iter__(self):
        return iter(self.violations)

    def __len__(self):
        return len(self.violations)


@dataclass(frozen=True)
class KGraph:
    k: int
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    squares: tuple[tuple[str, str, str, str], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "squares", tuple(tuple(sq) for sq in self.squares))
        if not 1 <= self.k <= MAX_RANK:
            if self.k > MAX_RANK:
                raise CapacityError(f"rank {self.k} exceeds {MAX_RANK}", MAX_RANK)
            raise InputError(f"rank must be positive, got {self.k}")
        if len(self.vertices) > MAX_VERTICES:
            raise CapacityError(f"{len(self.vertices)} vertices exceed {MAX_VERTICES}", MAX_VERTICES)
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        seen = set()
        for e in self.edges:
            if e.id in seen:
                raise InputError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            if not 1 <= e.color <= self.k:
                raise InputError(f"edge {e.id!r} has color {e.color} outside 1..{self.k}")
            for end in (e.range, e.source):
                if end not in self.vindex:
                    raise InputError(f"edge {e.id!r} refers to undeclared vertex {end!r}")
        for sq in self.squares:
            if len(sq) != 4:
                raise InputError(f"square {sq!r} must list four edge ids")
            for x in sq:
                if x not in seen:
                    raise InputError(f"square {sq!r} refers to unknown edge {x!r}")

    # index tables
    @cached_property
    def vindex(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def eindex(self) -> dict[str, int]:
        return {e.id: i for i, e in enumerate(self.edges)}

    @cached_property
    def _ecolor(self) -> list[int]:
        return [e.color for e in self.edges]

    @cached_property
    def _erange(self) -> list[int]:
        return [self.vindex[e.range] for e in self.edges]

    @cached_property
    def _esource(self) -> list[int]:
        return [self.vindex[e.source] for e in self.edges]

    @cached_property
    def _out(self) -> list[list[list[int]]]:
        """``_out[v][c-1]``: edges of color ``c`` with range ``v``."""
        out = [[[] for _ in range(self.k)] for _ in self.vertices]
        for x, e in enumerate(self.edges):
            out[self._erange[x]][e.color - 1].append(x)
        return out

    @cached_property
    def _squares_idx(self) -> list[tuple[int, int, int, int]]:
        ix = self.eindex
        return [tuple(ix[x] for x in sq) for sq in self.squares]

    @cached_property
    def _left(self) -> dict[tuple[int, int], tuple[int, int]]:
        table = {}
        for e, f, f2, e2 in self._squares_idx:
            table.setdefault((e, f), (f2, e2))
        return table

    @cached_property
    def _right(self) -> dict[tuple[int, int], tuple[int, int]]:
        table = {}
        for e, f, f2, e2 in self._squares_idx:
            table.setdefault((f2, e2), (e, f))
        return table

    # conversions
    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def full(self) -> int:
        return full_mask(self.n)

    def mask(self, names: Iterable[str]) -> int:
        try:
            return mask_of(self.vindex[v] for v in names)
        except KeyError as exc:
            raise InputError(f"unknown vertex {exc.args[0]!r}") from None

    def names(self, mask: int) -> list[str]:
        return [self.vertices[i] for i in iter_bits(mask)]

    def edge(self, eid: str) -> Edge:
        try:
            return self.edges[self.eindex[eid]]
        except KeyError:
            raise InputError(f"unknown edge {eid!r}") from None

    def vertex_path(self, v: str) -> Path:
        if v not in self.vindex:
            raise InputError(f"unknown vertex {v!r}")
        return Path(v, v, (), (0,) * self.k)

    def transfer_system(self) -> TransferSystem:
        return transfer_system(self)

    @cached_property
    def _transfer(self) -> TransferSystem:
        images = [[0] * self.n for _ in range(self.k)]
        for x, e in enumerate(self.edges):
            images[e.color - 1][self._erange[x]] |= 1 << self._esource[x]
        return TransferSystem(self.k, self.n, tuple(tuple(r) for r in images))

    # internal path helpers
    def _path(self, word: Sequence[int], start: int | None = None) -> Path:
        if not word:
            v = self.vertices[start]
            return Path(v, v, (), (0,) * self.k)
        deg = [0] * self.k
        for x in word:
            deg[self._ecolor[x] - 1] += 1
        return Path(
            self.vertices[self._erange[word[0]]],
            self.vertices[self._esource[word[-1]]],
            tuple(self.edges[x].id for x in word),
            tuple(deg),
        )

    def _swap(self, x: int, y: int) -> tuple[int, int]:
        cx, cy = self._ecolor[x], self._ecolor[y]
        table = self._left if cx < cy else self._right
        try:
            return table[(x, y)]
        except KeyError:
            raise InputError(
                f"no square factors {self.edges[x].id}·{self.edges[y].id}"
            ) from None

    def _reorder(self, word: list[int], target: Sequence[int]) -> list[int]:
        """Rewrite ``word`` so its color sequence is ``target`` (same multiset)."""
        word = list(word)
        for p, want in enumerate(target):
            q = p
            while self._ecolor[word[q]] != want:
                q += 1
            while q > p:
                word[q - 1], word[q] = self._swap(word[q - 1], word[q])
                q -= 1
        return word


def _word(g: KGraph, raw: Sequence[str]) -> list[int]:
    try:
        word = [g.eindex[x] for x in raw]
    except KeyError as exc:
        raise InputError(f"unknown edge {exc.args[0]!r}") from None
    for a, b in zip(word, word[1:]):
        if g._esource[a] != g._erange[b]:
            raise CompositionError(
                f"{g.edges[a].id} and {g.edges[b].id} are not composable"
            )
    return word


# -- validation ------------------------------------------------------------

def validate_kgraph(g: KGraph) -> ValidationReport:
    """Check the square table and the cube condition; never raises on violations."""
    report = ValidationReport()
    add = report.violations.append
    col, rng, src = g._ecolor, g._erange, g._esource
    E = g.edges

    well_formed = []
    for sq, (e, f, f2, e2) in zip(g.squares, g._squares_idx):
        problems = []
        if not (col[e] == col[e2] and col[f] == col[f2] and col[e] < col[f]):
            problems.append("colors must satisfy color(e)=color(e')<color(f)=color(f')")
        if src[e] != rng[f] or src[f2] != rng[e2]:
            problems.append("sides are not composable")
        if rng[e] != rng[f2] or src[f] != src[e2]:
            problems.append("sides do not share range and source")
        if problems:
            add(Violation("bad-square", f"square {sq}: " + "; ".join(problems), tuple(sq)))
        else:
            well_formed.append((e, f, f2, e2))

    lefts = Counter((e, f) for e, f, _, _ in well_formed)
    rights = Counter((f2, e2) for _, _, f2, e2 in well_formed)
    for pair, cnt in sorted(lefts.items()):
        if cnt > 1:
            add(Violation("non-bijective", f"pair ({E[pair[0]].id}, {E[pair[1]].id}) is the left side of {cnt} squares",
                          (E[pair[0]].id, E[pair[1]].id)))
    for pair, cnt in sorted(rights.items()):
        if cnt > 1:
            add(Violation("non-bijective", f"pair ({E[pair[0]].id}, {E[pair[1]].id}) is the right side of {cnt} squares",
                          (E[pair[0]].id, E[pair[1]].id)))

    for x in range(len(E)):
        for y in (z for c in g._out[src[x]] for z in c):
            if col[x] == col[y]:
                continue
            pair = (x, y)
            table = lefts if col[x] < col[y] else rights
            if pair not in table:
                side = "left" if col[x] < col[y] else "right"
                add(Violation("unmatched", f"composable pair ({E[x].id}, {E[y].id}) is not the {side} side of any square",
                              (E[x].id, E[y].id)))

    if report.ok and g.k >= 3:
        for v in range(g.n):
            for x in (z for c in g._out[v] for z in c):
                for y in (z for c in g._out[src[x]] for z in c):
                    if col[y] == col[x]:
                        continue
                    for z in (w for c in g._out[src[y]] for w in c):
                        if col[z] in (col[x], col[y]):
                            continue
                        results = _all_sortings(g, (x, y, z))
                        if len(results) > 1:
                            add(Violation("cube", f"triple ({E[x].id}, {E[y].id}, {E[z].id}) has {len(results)} distinct normal forms",
                                          (E[x].id, E[y].id, E[z].id)))
    return report


def _all_sortings(g: KGraph, word: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Normal forms reached by every sequence of adjacent descents."""
    col = g._ecolor
    out = set()
    stack = [word]
    seen = {word}
    while stack:
        w = stack.pop()
        moved = False
        for t in range(len(w) - 1):
            if col[w[t]] > col[w[t + 1]]:
                moved = True
                a, b = g._swap(w[t], w[t + 1])
                nxt = w[:t] + (a, b) + w[t + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if not moved:
            out.add(w)
    return out


# -- paths -----------------------------------------------------------------

def normalize(g: KGraph, raw: Sequence[str]) -> Path:
    """Color-nondecreasing normal form of a nonempty composable edge sequence."""
    if not raw:
        raise InputError("normalize needs at least one edge; use KGraph.vertex_path")
    word = _word(g, raw)
    target = sorted(g._ecolor[x] for x in word)
    return g._path(g._reorder(word, target))


def _path_word(g: KGraph, lam: Path) -> list[int]:
    return _word(g, lam.edges) if lam.edges else []


def compose(g: KGraph, lam: Path, mu: Path) -> Path:
    if lam.source != mu.range:
        raise CompositionError(f"s({lam}) = {lam.source} but r({mu}) = {mu.range}")
    if lam.is_vertex:
        return mu
    if mu.is_vertex:
        return lam
    return normalize(g, lam.edges + mu.edges)


def segment(g: KGraph, lam: Path, l: Sequence[int], m: Sequence[int]) -> Path:
    """The unique factor ``lam(l, m)`` of degree ``m - l``."""
    l, m, n = tuple(l), tuple(m), lam.degree
    if len(l) != g.k or len(m) != g.k:
        raise InputError(f"degrees must have {g.k} entries")
    if not (deg_le((0,) * g.k, l) and deg_le(l, m) and deg_le(m, n)):
        raise InputError(f"need 0 <= {l} <= {m} <= {n}")
    first, middle, last = _color_word(l), _color_word(deg_sub(m, l)), _color_word(deg_sub(n, m))
    word = g._reorder(_path_word(g, lam), first + middle + last)
    block = word[len(first):len(first) + len(middle)]
    if block:
        return g._path(block)
    if first:
        return g._path([], g._esource[word[len(first) - 1]])
    return g.vertex_path(lam.range)


def paths_from(g: KGraph, v: str, n: Sequence[int], max_length: int = MAX_PATH_LENGTH) -> set[Path]:
    """``v Lambda^n``: all paths of degree ``n`` with range ``v``."""
    n = tuple(n)
    if len(n) != g.k or any(a < 0 for a in n):
        raise InputError(f"degree must be {g.k} nonnegative integers")
    if sum(n) > max_length:
        raise CapacityError(f"path length {sum(n)} exceeds {max_length}", max_length)
    if v not in g.vindex:
        raise InputError(f"unknown vertex {v!r}")
    colors = _color_word(n)
    if not colors:
        return {g.vertex_path(v)}
    out = set()

    def extend(word, at, t):
        if t == len(colors):
            out.add(g._path(word))
            return
        for x in g._out[at][colors[t] - 1]:
            word.append(x)
            extend(word, g._esource[x], t + 1)
            word.pop()

    extend([], g.vindex[v], 0)
    return out


def source_set(g, S: int, n: Sequence[int]) -> int:
    """``s(S Lambda^n)``, computed with the transfer maps."""
    return as_transfer(g).apply_degree(n, S)


def mce(g: KGraph, mu: Path, nu: Path) -> set[Path]:
    """Minimal common extensions of ``mu`` and ``nu``."""
    if mu.range != nu.range:
        return set()
    top = deg_join(mu.degree, nu.degree)
    zero = (0,) * g.k
    out = set()
    for alpha in paths_from(g, mu.source, deg_sub(top, mu.degree)):
        lam = compose(g, mu, alpha)
        if segment(g, lam, zero, nu.degree) == nu:
            out.add(lam)
    return out


def lambda_min(g: KGraph, mu: Path, nu: Path) -> set[tuple[Path, Path]]:
    """Pairs ``(alpha, beta)`` with ``mu alpha = nu beta`` a minimal common extension."""
    out = set()
    for lam in mce(g, mu, nu):
        out.add((segment(g, lam, mu.degree, lam.degree), segment(g, lam, nu.degree, lam.degree)))
    return out


# -- vertex predicates -----------------------------------------------------

def _nonempty_F(system, F) -> int:
    ts = as_transfer(system)
    fm = as_fmask(F)
    if fm == 0:
        raise InputError("F must be a nonempty set of colors")
    if fm & ~ts.all_colors:
        raise InputError(f"F contains colors outside 1..{ts.k}")
    return fm


def _not_source_sets(ts: TransferSystem, fm: int, H0: int = 0) -> int:
    """Vertices with an ``F``-colored edge whose source avoids ``H0``."""
    out = 0
    for v in range(ts.n):
        for i in iter_bits(fm):
            if ts.images[i][v] & ~H0:
                out |= 1 << v
                break
    return out


def f_sources(g, F) -> int:
    ts = as_transfer(g)
    fm = _nonempty_F(ts, F)
    return ts.full & ~_not_source_sets(ts, fm)


def f_tracing(g, F) -> int:
    """Vertices from which every ``F^c``-colored path ends at a non-``F``-source."""
    ts = as_transfer(g)
    fm = _nonempty_F(ts, F)
    return ts.interior(ts.all_colors & ~fm, _not_source_sets(ts, fm))


def is_hereditary(g, H: int) -> bool:
    ts = as_transfer(g)
    return ts.is_closed(ts.all_colors, H)


def _require_hereditary(ts: TransferSystem, H: int, what: str = "H") -> None:
    if not ts.is_closed(ts.all_colors, H):
        for i in range(ts.k):
            escaped = ts.apply(i + 1, H) & ~H
            if escaped:
                v = (escaped & -escaped).bit_length() - 1
                raise PreconditionError(f"{what} is not hereditary (color {i + 1} reaches vertex index {v})",
                                        (i + 1, v))


def jf_vertices(g, F, H0: int) -> int:
    """Vertex set of the ideal ``J_F(I_H0)``: ``H0`` plus non-``F``-sources of the quotient."""
    ts = as_transfer(g)
    fm = _nonempty_F(ts, F)
    _require_hereditary(ts, H0, "H0")
    return H0 | (_not_source_sets(ts, fm, H0) & ~H0)


def transfer_system(g: KGraph) -> TransferSystem:
    ts = g._transfer
    bad = ts.commutation_failures()
    if bad:
        i, j, v = bad[0]
        raise PreconditionError(
            f"transfer maps {i} and {j} do not commute at {g.vertices[v]!r}; the graph is not a valid k-graph",
            (i, j, g.vertices[v]),
        )
    return ts


def quotient_graph(g: KGraph, H: int) -> KGraph:
    """``Gamma(Lambda \\ H)``: vertices off ``H`` and edges whose source is off ``H``."""
    _require_hereditary(g._transfer, H)
    keep_v = [v for i, v in enumerate(g.vertices) if not (H >> i) & 1]
    keep_e = [e for x, e in enumerate(g.edges) if not (H >> g._esource[x]) & 1]
    return _induced(g, keep_v, keep_e)


def subgraph(g: KGraph, H: int) -> KGraph:
    """``Lambda(H)``: vertices in ``H`` and edges whose range is in ``H``."""
    _require_hereditary(g._transfer, H)
    keep_v = [v for i, v in enumerate(g.vertices) if (H >> i) & 1]
    keep_e = [e for x, e in enumerate(g.edges) if (H >> g._erange[x]) & 1]
    return _induced(g, keep_v, keep_e)


def _induced(g: KGraph, keep_v, keep_e) -> KGraph:
    ids = {e.id for e in keep_e}
    squares = [sq for sq in g.squares if all(x in ids for x in sq)]
    return KGraph(g.k, tuple(keep_v), tuple(keep_e), tuple(squares))


def is_saturated(g, H: int) -> bool:
    ts = as_transfer(g)
    return _saturation_step(ts, H) == 0


def _saturation_step(ts: TransferSystem, H: int) -> int:
    add = 0
    for v in range(ts.n):
        if (H >> v) & 1:
            continue
        for row in ts.images:
            if row[v] and not (row[v] & ~H):
                add |= 1 << v
                break
    return add


def saturation(g, H: int) -> int:
    """Least saturated superset of a hereditary set."""
    ts = as_transfer(g)
    _require_hereditary(ts, H)
    while True:
        add = _saturation_step(ts, H)
        if not add:
            return H
        H |= add


def is_sourceless(g) -> bool:
    ts = as_transfer(g)
    return all(row[v] for row in ts.images for v in range(ts.n))


def is_locally_convex(g) -> bool:
    ts = as_transfer(g)
    for v in range(ts.n):
        for i, j in permutations(range(ts.k), 2):
            if ts.images[i][v] and ts.images[j][v]:
                for w in iter_bits(ts.images[i][v]):
                    if not ts.images[j][w]:
                        return False
    return True


def require_valid(g: KGraph) -> None:
    report = validate_kgraph(g)
    if not report.ok:
        raise PreconditionError(f"graph is not a valid {g.k}-graph: {report.violations[0].message}",
                                report.violations[0].witness)
