import random

import pytest
from hypothesis import given

from conftest import dynsystems, seeds
from kgideals.corpus import random_automorphic
from kgideals.dynsys import (
    DynSys,
    dyn_invariant_subsets,
    dyn_is_nt_tuple,
    dyn_transfer,
    forward_invariant_subsets,
    is_automorphic,
    no_family,
    to_kgraph,
    validate_dynsys,
)
from kgideals.errors import InputError, PreconditionError
from kgideals.kgraph import validate_kgraph
from kgideals.lattice import enumerate_no_tuples
from kgideals.oracle import katsura_tpairs
from kgideals.tuples import TupleFamily, is_nt_tuple

P1, P2 = 1, 2
COLLAPSE = DynSys.from_pairs(1, ["1", "2"], {1: {"1": "1", "2": "1"}})


def test_validation_examples():
    assert validate_dynsys(DynSys.from_pairs(1, ["a", "b"], {1: {"a": "b"}})).ok
    ident = {"1": "1", "2": "2"}
    assert validate_dynsys(DynSys.from_pairs(2, ["1", "2"], {1: ident, 2: ident})).ok
    bad = DynSys.from_pairs(2, ["1", "2"], {1: {"1": "2", "2": "1"}, 2: {"1": "1"}})
    report = validate_dynsys(bad)
    assert not report.ok
    assert report.violations[0].witness == (1, 2, "1")
    with pytest.raises(PreconditionError):
        dyn_transfer(bad)


def test_unknown_point_is_an_input_error():
    with pytest.raises(InputError):
        DynSys.from_pairs(1, ["a"], {1: {"a": "z"}})


def test_transfer_examples():
    ts = dyn_transfer(COLLAPSE)
    assert ts.apply(1, P1) == P1 | P2
    assert ts.apply(1, P2) == 0
    swap = DynSys.from_pairs(1, ["1", "2"], {1: {"1": "2", "2": "1"}})
    assert dyn_transfer(swap).apply(1, P1) == P2


def test_nt_examples():
    for H in (TupleFamily.empty(1), TupleFamily.constant(1, P1 | P2)):
        assert dyn_is_nt_tuple(COLLAPSE, H)
    assert dyn_is_nt_tuple(COLLAPSE, TupleFamily(1, (P2, P2)))
    assert dyn_is_nt_tuple(COLLAPSE, TupleFamily(1, (0, P1)))


def test_invariant_subset_examples():
    swap = DynSys.from_pairs(1, ["1", "2"], {1: {"1": "2", "2": "1"}})
    assert dyn_invariant_subsets(swap) == [0, 3]
    ident = DynSys.from_pairs(1, ["1", "2", "3"], {1: {v: v for v in "123"}})
    assert dyn_invariant_subsets(ident) == list(range(8))
    cycle = DynSys.from_pairs(1, ["1", "2", "3"], {1: {"1": "2", "2": "3", "3": "1"}})
    assert dyn_invariant_subsets(cycle) == [0, 7]
    with pytest.raises(PreconditionError):
        dyn_invariant_subsets(COLLAPSE)


@given(dynsystems())
def test_transfer_maps_commute_when_valid(D):
    ts = dyn_transfer(D)
    assert ts.commutes()
    for S in range(1 << ts.n):
        for i in range(1, ts.k + 1):
            assert ts.apply(i, S) & ~ts.full == 0


@given(dynsystems())
def test_graph_of_a_system_is_valid_and_matches(D):
    g = to_kgraph(D)
    assert validate_kgraph(g).ok
    assert g.transfer_system() == dyn_transfer(D)


@given(dynsystems(1))
def test_rank_one_matches_katsura(D):
    pairs = set(katsura_tpairs(D))
    for H0 in range(1 << D.n):
        for H1 in range(1 << D.n):
            assert bool(dyn_is_nt_tuple(D, TupleFamily(1, (H0, H1)))) == ((H0, H1) in pairs)


@given(dynsystems(), seeds)
def test_system_and_graph_agree_on_nt(D, seed):
    rng = random.Random(seed)
    g = to_kgraph(D)
    for _ in range(20):
        H = TupleFamily(D.d, [rng.getrandbits(D.n) for _ in range(1 << D.d)])
        assert bool(dyn_is_nt_tuple(D, H)) == bool(is_nt_tuple(g, H))


@given(seeds)
def test_automorphic_no_tuples(seed):
    rng = random.Random(seed)
    D = random_automorphic(rng, rng.choice([1, 2]), 10)
    assert is_automorphic(D)
    invariant = dyn_invariant_subsets(D)
    assert invariant == forward_invariant_subsets(D)
    for H in invariant:
        assert dyn_is_nt_tuple(D, no_family(D, H))
    if D.n << D.d <= 64:
        found = set(enumerate_no_tuples(D))
        assert found == {no_family(D, H) for H in invariant}
