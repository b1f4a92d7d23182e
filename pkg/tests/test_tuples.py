import random

import pytest
from hypothesis import given

from conftest import any_graphs, one_graphs, seeds, two_graphs
from kgideals.corpus import random_kgraph
from kgideals.errors import InputError, PreconditionError
from kgideals.fixtures import fx1
from kgideals.kgraph import f_tracing, is_hereditary, is_locally_convex, is_saturated
from kgideals.oracle import katsura_tpairs
from kgideals.tuples import (
    TupleFamily,
    color_sets,
    inv_closure,
    is_hereditary_family,
    is_m_tuple,
    is_neg_invariant,
    is_no_tuple,
    is_nt_tuple,
    is_partially_ordered,
    is_relative_no_tuple,
    iterate,
    iterate_once,
    maximalise,
    participates_in_no_tuple,
    po_closure,
    rf_condition_sets,
    to_quotient,
    tracing_family,
)

U, W = 1, 2
UW = U | W
COUNTER = TupleFamily(2, (0, W, 0, UW))  # indexed by ∅, {1}, {2}, {1,2}


def test_color_sets_order():
    assert color_sets(2) == [0, 1, 2, 3]
    assert color_sets(3) == [0, 1, 2, 4, 3, 5, 6, 7]


def test_family_shape_and_indexing():
    H = TupleFamily.from_mapping(2, {(): 1, (1,): 2, (1, 2): 3})
    assert H.components == (1, 2, 0, 3)
    assert H[{1, 2}] == 3 and H[3] == 3
    with pytest.raises(InputError):
        TupleFamily(2, (0, 0, 0))


# -- hereditary and partially ordered ---------------------------------------------

def test_hereditary_family_examples(g2, g3):
    verdict = is_hereditary_family(g2, TupleFamily(1, (U, 0)))
    assert not verdict
    assert (verdict.F, verdict.vertex, verdict.detail) == (0, 1, "color 1")
    assert is_hereditary_family(g3, TupleFamily.constant(2, UW))
    assert is_hereditary_family(g3, TupleFamily(2, (0, W, 0, 0)))


def test_partial_order_examples():
    assert is_partially_ordered(TupleFamily.constant(2, 1))
    assert not is_partially_ordered(TupleFamily(2, (0, 1, 0, 0)))


def test_closure_examples(g2, g3):
    assert inv_closure(g2, TupleFamily(1, (U, 0)))[0] == UW
    closed = TupleFamily.constant(2, UW)
    assert inv_closure(g3, closed) == closed and po_closure(closed) == closed
    assert po_closure(TupleFamily(2, (0, 1, 0, 0))) == TupleFamily(2, (0, 1, 0, 1))


def _random_family(ts, rng):
    return TupleFamily(ts.k, [rng.getrandbits(ts.n) for _ in range(1 << ts.k)])


@given(any_graphs(), seeds)
def test_closures_are_closure_operators(g, seed):
    rng = random.Random(seed)
    A = _random_family(g, rng)
    B = A | _random_family(g, rng)
    for close in (lambda H: inv_closure(g, H), po_closure):
        cA = close(A)
        assert A <= cA
        assert close(cA) == cA
        assert cA <= close(B)
    assert is_hereditary_family(g, inv_closure(g, A))
    assert is_partially_ordered(po_closure(A))
    # po_closure keeps heredity
    assert is_hereditary_family(g, po_closure(inv_closure(g, A)))


# -- the NT test ------------------------------------------------------------------

def test_condition_sets_on_counterexample(g3):
    assert rf_condition_sets(g3, COUNTER, 1) == (UW, UW, UW)


def test_condition_sets_trivial_cases(g3):
    assert rf_condition_sets(g3, TupleFamily.constant(2, UW), 1)[2] == UW
    only_f = TupleFamily(2, (0, W, 0, 0))
    assert rf_condition_sets(g3, only_f, 1)[1] == 0


def test_counterexample_fails_condition_iv(g3):
    verdict = is_nt_tuple(g3, COUNTER)
    assert not verdict
    assert (verdict.condition, verdict.F, verdict.vertex) == ("(iv)", 1, 0)
    assert verdict.describe(g3.vertices) == "condition (iv) fails at F={1}, witness u"


@pytest.mark.parametrize("k", [1, 2, 3])
def test_trivial_families_are_nt(k):
    g = fx1(k)
    assert is_nt_tuple(g, TupleFamily.empty(k))
    assert is_nt_tuple(g, TupleFamily.constant(k, 1))


def test_top_only_family_is_nt():
    assert is_nt_tuple(fx1(2), TupleFamily(2, (0, 0, 0, 1)))


def test_no_tuple_examples(g3):
    g = fx1(2)
    assert is_no_tuple(g, TupleFamily.constant(2, 1))
    empty = TupleFamily.empty(2)
    assert is_nt_tuple(g, empty) and not is_no_tuple(g, empty)
    for H in (empty, TupleFamily(2, (0, 0, 0, 1)), TupleFamily(2, (0, 1, 0, 0))):
        assert bool(is_relative_no_tuple(g, H, empty)) == bool(is_nt_tuple(g, H))
    assert not is_relative_no_tuple(g3, COUNTER, empty)


@given(one_graphs())
def test_rank_one_nt_matches_katsura(g):
    pairs = set(katsura_tpairs(g))
    for H0 in range(1 << g.n):
        for H1 in range(1 << g.n):
            assert bool(is_nt_tuple(g, TupleFamily(1, (H0, H1)))) == ((H0, H1) in pairs)


# -- iteration, maximalisation and (M) ------------------------------------------------

def test_iterate_once_on_counterexample(g3):
    quotient, G = to_quotient(g3, COUNTER)
    assert iterate_once(quotient, G) == TupleFamily(2, (0, UW, 0, UW))


def test_iterate_once_rejects_non_e_family(g3):
    with pytest.raises(PreconditionError):
        iterate_once(g3, TupleFamily(2, (U, 0, 0, 0)))


def test_iterate_once_on_empty_family():
    assert iterate_once(fx1(2), TupleFamily.empty(2)) == TupleFamily.empty(2)


def test_maximalise_examples(g3):
    M = maximalise(g3, COUNTER)
    assert M == TupleFamily(2, (0, UW, 0, UW))
    assert is_nt_tuple(g3, M)
    assert maximalise(fx1(2), TupleFamily.empty(2)) == TupleFamily.empty(2)


def test_maximalise_rejects_non_tracing(g2):
    # in FX2 the vertex w is not {1}-tracing
    with pytest.raises(PreconditionError):
        maximalise(g2, TupleFamily(1, (0, W)))


def test_m_tuple_examples(g3):
    assert is_m_tuple(g3, TupleFamily.empty(2))
    assert is_m_tuple(g3, tracing_family(g3))
    assert not is_m_tuple(g3, COUNTER)


def _relative_family(g, rng):
    """A random family whose quotient part is an (E)-family."""
    ts = g.transfer_system()
    H0 = ts.closure(ts.all_colors, rng.getrandbits(g.n) & rng.getrandbits(g.n))
    quotient = ts.restrict(ts.full & ~H0)
    trace = tracing_family(quotient)
    comps = [H0] + [(trace[F] & rng.getrandbits(g.n)) | H0 for F in range(1, 1 << g.k)]
    return TupleFamily(g.k, comps)


@given(any_graphs(), seeds)
def test_maximalise_properties(g, seed):
    H = _relative_family(g, random.Random(seed))
    M = maximalise(g, H)
    assert is_nt_tuple(g, M)
    assert maximalise(g, M) == M
    quotient, G = to_quotient(g, H)
    P = po_closure(inv_closure(quotient, G))
    assert iterate(quotient, P, g.k) == iterate(quotient, P, g.k - 1)


@given(two_graphs(), seeds)
def test_nt_tuples_are_fixed_by_maximalise(g, seed):
    rng = random.Random(seed)
    for _ in range(20):
        H = po_closure(inv_closure(g, _random_family(g, rng)))
        if is_nt_tuple(g, H):
            assert maximalise(g, H) == H


# -- single ideals ------------------------------------------------------------------

def test_participation_examples(g2):
    # u is {1}-tracing and its only edge comes from w, so {w} is not negatively invariant
    assert f_tracing(g2, 1) == U
    assert not is_neg_invariant(g2, W)
    assert not participates_in_no_tuple(g2, W)
    assert participates_in_no_tuple(g2, UW)
    assert participates_in_no_tuple(fx1(2), 0)
    assert not participates_in_no_tuple(g2, U)


@given(any_graphs())
def test_locally_convex_participation_is_hereditary_saturated(g):
    if not is_locally_convex(g):
        return
    for H0 in range(1 << g.n):
        expected = is_hereditary(g, H0) and is_saturated(g, H0)
        assert bool(participates_in_no_tuple(g, H0)) == expected


def _has_bicolored_cycle(g):
    """Some strongly connected piece of the skeleton carries edges of two colors."""
    reach = {v: {v} for v in g.vertices}
    changed = True
    while changed:
        changed = False
        for e in g.edges:
            new = reach[e.source] - reach[e.range]
            if new:
                reach[e.range] |= new
                changed = True
    colors_on_cycles = {e.color for e in g.edges if e.range in reach[e.source]}
    return len(colors_on_cycles) > 1


def test_condition_iv_failure_frequency(capsys):
    # observational: how often (iv) is the first failing condition, split by cycle structure
    rng = random.Random(31)
    tally = {True: [0, 0], False: [0, 0]}
    for _ in range(60):
        g = random_kgraph(rng, 2, 4)
        key = _has_bicolored_cycle(g)
        for _ in range(100):
            H = po_closure(inv_closure(g, _random_family(g, rng)))
            verdict = is_nt_tuple(g, H)
            tally[key][0] += 1
            tally[key][1] += verdict.condition == "(iv)"
    with capsys.disabled():
        for key, (total, fails) in tally.items():
            label = "with" if key else "without"
            print(f"\n(iv) failures on 2-graphs {label} two-colored cycles: {fails}/{total}")
    assert sum(t for t, _ in tally.values()) == 6000
