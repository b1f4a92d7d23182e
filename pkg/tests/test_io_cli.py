import io
import json
import random
import shutil
from pathlib import Path

import pytest
from hypothesis import given

from conftest import any_graphs, dynsystems, seeds
from kgideals.cli import main
from kgideals.fixtures import fx1, fx2, fx3
from kgideals.io import (
    dumps,
    dynsys_from_doc,
    dynsys_to_doc,
    families_from_doc,
    family_from_doc,
    family_to_doc,
    fkey,
    graph_from_doc,
    graph_to_doc,
    parse_fkey,
)
from kgideals.errors import InputError
from kgideals.tuples import TupleFamily

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    for p in FIXTURES.glob("*.json"):
        shutil.copy(p, tmp_path / p.name)
    return tmp_path


# -- documents ---------------------------------------------------------------------

def test_fkeys():
    assert [fkey(F) for F in range(4)] == ["", "1", "2", "1,2"]
    assert parse_fkey("2,1", 2) == 3 and parse_fkey("", 2) == 0
    with pytest.raises(InputError):
        parse_fkey("3", 2)


def test_missing_family_keys_default_to_empty(g3):
    H = family_from_doc({"components": {"1,2": ["u"]}}, g3)
    assert H == TupleFamily(2, (0, 0, 0, 1))
    with pytest.raises(InputError):
        family_from_doc({"components": {"1": ["nobody"]}}, g3)


def test_shipped_fixtures_match_builders():
    for name, g in [("fx1-1", fx1(1)), ("fx1-2", fx1(2)), ("fx1-3", fx1(3)), ("fx2", fx2()), ("fx3", fx3())]:
        assert graph_from_doc(json.loads((FIXTURES / f"{name}.json").read_text())) == g


@given(any_graphs(), seeds)
def test_round_trips(g, seed):
    doc = graph_to_doc(g)
    assert graph_from_doc(json.loads(dumps(doc))) == g
    assert dumps(graph_to_doc(graph_from_doc(doc))) == dumps(doc)
    rng = random.Random(seed)
    fams = [TupleFamily(g.k, [rng.getrandbits(g.n) for _ in range(1 << g.k)]) for _ in range(3)]
    for H in fams:
        assert family_from_doc(json.loads(dumps(family_to_doc(H, g.vertices))), g) == H


@given(dynsystems())
def test_dynsys_round_trip(D):
    assert dynsys_from_doc(json.loads(dumps(dynsys_to_doc(D)))) == D


# -- commands ----------------------------------------------------------------------

def test_check_nt_counterexample(files):
    code, out, err = run("check-nt", files / "fx3.json", files / "family_counterexample.json")
    assert code == 1 and err == ""
    assert out == "NT-tuple: no\ncondition (iv) fails at F={1}, witness u\n"


def test_check_nt_oracle_and_explain(files):
    code, out, _ = run("check-nt", files / "fx3.json", files / "family_counterexample.json", "--oracle")
    assert code == 1 and "(oracle)" in out
    code, out, _ = run("check-nt", files / "fx3.json", files / "family_counterexample.json", "--explain")
    assert "F={1}: H1={u,w} H2={u,w} H3={u,w} H_F={w}" in out


def test_maximalise_then_check(files):
    code, out, _ = run("maximalise", files / "fx3.json", files / "family_counterexample.json")
    assert code == 0
    doc = json.loads(out)
    assert doc["components"] == {"": [], "1": ["u", "w"], "2": [], "1,2": ["u", "w"]}
    (files / "max.json").write_text(out)
    assert run("check-nt", files / "fx3.json", files / "max.json")[0] == 0
    assert run("check-m", files / "fx3.json", files / "family_counterexample.json")[0] == 1


def test_enumerate_fx2(files):
    code, out, _ = run("enumerate", files / "fx2.json")
    assert code == 0
    doc = json.loads(out)
    assert [f["components"] for f in doc["families"]] == [
        {"": [], "1": []}, {"": [], "1": ["u"]}, {"": ["w"], "1": ["w"]}, {"": ["u", "w"], "1": ["u", "w"]},
    ]
    assert families_from_doc(doc, fx2()) == families_from_doc(json.loads(run("enumerate", files / "fx2.json", "--oracle")[1]), fx2())
    no = json.loads(run("enumerate", files / "fx2.json", "--no")[1])
    assert len(no["families"]) == 2


def test_lattice_dot_is_byte_stable(files):
    first = run("lattice", files / "fx1-2.json", "--format", "dot")
    second = run("lattice", files / "fx1-2.json", "--format", "dot")
    assert first == second and first[0] == 0
    dot = first[1]
    assert dot.count("[label=") == 6 and dot.count("->") == 6
    assert 'n1 [label="{1,2}→{v}"];' in dot


def test_lattice_json(files):
    doc = json.loads(run("lattice", files / "fx2.json")[1])
    assert len(doc["nodes"]) == 4 and doc["covers"] == [[0, 1], [0, 2], [1, 3], [2, 3]]
    assert doc["nodes"][1]["flags"] == {"no": True, "m": True}


def test_meet_join_and_formula(files):
    g = fx2()
    (files / "a.json").write_text(dumps(family_to_doc(TupleFamily(1, (0, 1)), g.vertices)))
    (files / "b.json").write_text(dumps(family_to_doc(TupleFamily(1, (2, 2)), g.vertices)))
    code, out, _ = run("meet", files / "fx2.json", files / "a.json", files / "b.json")
    assert json.loads(out)["components"] == {"": [], "1": []}
    code, out, err = run("join", files / "fx2.json", files / "a.json", files / "b.json")
    assert json.loads(out)["components"] == {"": ["u", "w"], "1": ["u", "w"]}
    assert "64 bits" in err
    code, out, _ = run("join-formula", files / "fx2.json", files / "a.json", files / "b.json", "--H0", "u,w")
    assert json.loads(out)["components"] == {"": ["u", "w"], "1": ["u", "w"]}
    assert run("meet", files / "fx3.json", files / "family_counterexample.json",
               files / "family_counterexample.json")[0] == 2


def test_vertex_commands(files):
    assert run("tracing", files / "fx2.json", "--F", "1")[1] == "{u}\n"
    assert run("jf", files / "fx2.json", "--F", "1", "--H0", "w")[1] == "{w}\n"
    assert run("saturate", files / "fx2.json", "--H", "w")[1] == "{u,w}\n"
    code, out, _ = run("quotient", files / "fx2.json", "--H", "w")
    assert code == 0 and json.loads(out)["vertices"] == ["u"]
    code, out, _ = run("subgraph", files / "fx3.json", "--H", "w")
    assert code == 0 and json.loads(out)["vertices"] == ["w"]


def test_no_checks(files):
    g = fx1(2)
    (files / "full.json").write_text(dumps(family_to_doc(TupleFamily.constant(2, 1), g.vertices)))
    (files / "empty.json").write_text(dumps(family_to_doc(TupleFamily.empty(2), g.vertices)))
    assert run("check-no", files / "fx1-2.json", files / "full.json")[0] == 0
    assert run("check-no", files / "fx1-2.json", files / "empty.json")[0] == 1
    assert run("check-no", files / "fx1-2.json", files / "empty.json", "--relative", files / "empty.json")[0] == 0


def test_reports(files):
    code, out, _ = run("regular-report", files / "fx1-2.json")
    assert code == 0 and "NT-tuples labelled by antichains: 6" in out
    code, out, _ = run("rsy-report", files / "fx2.json")
    assert code == 0 and "bijection: yes" in out
    assert run("regular-report", files / "fx2.json")[0] == 2


def test_validate_reports_problems(files, g3):
    doc = graph_to_doc(g3)
    doc["squares"] = doc["squares"][:1]
    (files / "broken.json").write_text(dumps(doc))
    code, out, _ = run("validate", files / "broken.json")
    assert code == 1 and "[unmatched]" in out
    assert run("validate", files / "fx3.json")[0] == 0
    assert run("check-nt", files / "broken.json", files / "family_counterexample.json")[0] == 2


def test_input_errors(files):
    (files / "junk.json").write_text("{not json")
    assert run("validate", files / "junk.json")[0] == 2
    assert run("validate", files / "missing.json")[0] == 2


def test_capacity_exit_code(files):
    code, _, err = run("enumerate", files / "fx1-3.json", "--max-bits", "4")
    assert code == 3 and "exceeds" in err


def test_generate_is_seeded_and_valid(tmp_path):
    first = run("generate", "--seed", 5, "--k", 2)
    assert first == run("generate", "--seed", 5, "--k", 2)
    (tmp_path / "g.json").write_text(first[1])
    assert run("validate", tmp_path / "g.json")[0] == 0
    code, out, _ = run("generate", "--seed", 5, "--k", 2, "--kind", "dynsys")
    (tmp_path / "d.json").write_text(out)
    assert run("dynsys-validate", tmp_path / "d.json")[0] == 0


def test_dynsys_commands(tmp_path):
    swap = {"d": 1, "carrier": ["1", "2"], "maps": [{"color": 1, "pairs": [["1", "2"], ["2", "1"]]}]}
    (tmp_path / "swap.json").write_text(json.dumps(swap))
    assert run("dynsys-invariants", tmp_path / "swap.json")[1] == "{}\n{1,2}\n"
    (tmp_path / "h.json").write_text(json.dumps({"components": {"": [], "1": ["1", "2"]}}))
    for extra in ((), ("--oracle",)):
        assert run("dynsys-check-nt", tmp_path / "swap.json", tmp_path / "h.json", *extra)[0] == 0
    (tmp_path / "bad.json").write_text(json.dumps({"components": {"": ["1"], "1": ["1"]}}))
    code, out, _ = run("dynsys-check-nt", tmp_path / "swap.json", tmp_path / "bad.json")
    assert code == 1 and "(ii)" in out
