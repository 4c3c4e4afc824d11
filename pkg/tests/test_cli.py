"""End-to-end runs of the command line front end."""

import json

import pytest

from operadkit.algebra import (
    FiniteOperad,
    builtin_as,
    endomorphism_operad,
    operad_from_json,
    operad_to_json,
)
from operadkit.cli import run
from operadkit.cosimp import cosimp_to_json, loops_example
from operadkit.freecons import free_bimod_elements, free_ib_elements
from operadkit.seqcore import CLOSED, Profile
from operadkit.trees import count_ptrees


def out_of(capsys) -> str:
    return capsys.readouterr().out


def test_fvector_contract_line(capsys):
    assert run(["cells", "fvector", "--n", "4", "--colour", "closed"]) == 0
    assert out_of(capsys) == "5 5 1\n"
    assert run(["cells", "fvector", "--n", "5", "--colour", "open"]) == 0
    assert out_of(capsys) == "14 21 9 1\n"


def test_wa_text_json_and_dot(capsys, tmp_path):
    assert run(["cells", "wa", "--n", "4", "--colour", "closed"]) == 0
    text = out_of(capsys)
    assert text.startswith("f-vector: 5 5 1\n")
    assert text.count("dim 0") == 5

    assert run(["cells", "wa", "--n", "3", "--colour", "open", "--format", "json"]) == 0
    doc = json.loads(out_of(capsys))
    assert [f["dim"] for f in doc["artifact"]["faces"]] == [0, 0, 1]

    target = tmp_path / "poset.dot"
    code = run(
        ["cells", "wa", "--n", "3", "--colour", "open", "--dot", "--out", str(target)]
    )
    assert code == 0
    assert target.read_text().startswith("digraph")
    assert f"wrote {target}" in out_of(capsys)


def test_subdiv_and_identities(capsys):
    assert run(["cells", "subdiv", "--n", "4"]) == 0
    text = out_of(capsys)
    assert "PASS subdivision totals equal 3 -- 11 cells" in text
    assert run(["cells", "identities", "--seed", "3", "--points", "40"]) == 0
    text = out_of(capsys)
    assert text.count("PASS") == 4


def test_usage_errors_exit_2(capsys):
    assert run(["cells", "fvector", "--n", "1", "--colour", "closed"]) == 2
    assert run(["cells", "subdiv", "--n", "99"]) == 2
    assert run(["nonsense"]) == 2
    assert run(["trees", "enumerate", "--n", "3", "--constraint", "pearl"]) == 2
    assert run(["cosimp", "check", "--file", "/no/such/file.json"]) == 2
    capsys.readouterr()


def test_operad_check_and_build(capsys, tmp_path):
    assert run(["operad", "check", "--builtin", "act", "--maxArity", "6"]) == 0
    assert "PASS operad axioms: act (maxArity 6)" in out_of(capsys)

    target = tmp_path / "as.json"
    assert run(
        ["operad", "build", "--builtin", "as-strict", "--maxArity", "3",
         "--out", str(target)]
    ) == 0
    capsys.readouterr()
    assert operad_from_json(target.read_text()) == builtin_as(True, 3)

    endo = endomorphism_operad({CLOSED: ("0", "1")}, 2)
    unit = endo.units[CLOSED]
    compose = dict(endo.compose)
    unit_profile = Profile((CLOSED,), CLOSED)
    key = next(
        k for k in compose if k[3] == unit_profile and k[4] == unit
    )
    compose[key] = next(
        x for x in endo.carrier.elements(key[0]) if x != compose[key]
    )
    bad = tmp_path / "bad.json"
    bad.write_text(operad_to_json(FiniteOperad(endo.carrier, endo.units, compose)))
    assert run(["operad", "check", "--file", str(bad)]) == 1
    assert "FAIL" in out_of(capsys)

    notjson = tmp_path / "mangled.json"
    notjson.write_text("{not json")
    assert run(["operad", "check", "--file", str(notjson)]) == 2
    capsys.readouterr()


def test_free_matches_library(capsys, tmp_path):
    target = tmp_path / "as.json"
    run(["operad", "build", "--builtin", "as-strict", "--maxArity", "3",
         "--out", str(target)])
    capsys.readouterr()
    o = builtin_as(True, 3)
    profile = Profile((CLOSED, CLOSED), CLOSED)

    assert run(["free", "ib", "--operad", str(target), "--module", str(target),
                "--profile", "cc->c"]) == 0
    lines = out_of(capsys).strip().splitlines()
    want = free_ib_elements(o, o.carrier, profile)
    assert lines[0] == f"{len(want)} elements"
    assert len(lines) == 1 + len(want)

    assert run(["free", "bimod", "--operad", str(target), "--module", str(target),
                "--profile", "cc->c"]) == 0
    lines = out_of(capsys).strip().splitlines()
    assert lines[0] == f"{len(free_bimod_elements(o, o.carrier, profile))} elements"

    assert run(["free", "ib", "--operad", str(target), "--module", str(target),
                "--profile", "cq->c"]) == 2
    capsys.readouterr()


def test_trees_commands(capsys):
    assert run(["trees", "enumerate", "--n", "4", "--constraint", "min_arity_2"]) == 0
    lines = out_of(capsys).strip().splitlines()
    assert lines[0] == "11 trees" and len(lines) == 12

    assert run(["trees", "enumerate", "--n", "3", "--constraint", "tree_n_o"]) == 0
    lines = out_of(capsys).strip().splitlines()
    assert len(lines) == 4 and all(code.endswith("o") for code in lines[1:])

    assert run(["trees", "count", "--m", "3", "--n", "2"]) == 0
    assert out_of(capsys).strip() == str(count_ptrees(3, 2))


def test_cosimp_box_and_check(capsys, tmp_path):
    mon, module, _ = loops_example(["*", "u"], ["*"], "*", 3)
    x = tmp_path / "x.json"
    y = tmp_path / "y.json"
    x.write_text(cosimp_to_json(mon.x))
    y.write_text(cosimp_to_json(module.x))

    assert run(["cosimp", "check", "--file", str(x)]) == 0
    capsys.readouterr()

    box = tmp_path / "box.json"
    assert run(["cosimp", "box", "--x", str(x), "--y", str(y),
                "--out", str(box)]) == 0
    assert out_of(capsys).startswith("box levels: ")
    assert run(["cosimp", "check", "--file", str(box)]) == 0
    capsys.readouterr()

    doc = json.loads(x.read_text())
    doc["cofaces"][0][0] = {k: doc["levels"][1][0] for k in doc["levels"][0]}
    doc["cofaces"][0][1] = {k: doc["levels"][1][-1] for k in doc["levels"][0]}
    corrupt = tmp_path / "corrupt.json"
    corrupt.write_text(json.dumps(doc))
    status = run(["cosimp", "check", "--file", str(corrupt)])
    capsys.readouterr()
    assert status in (1, 2)


def test_cosimp_seed_then_derive(capsys, tmp_path):
    bm = tmp_path / "bm.json"
    eta = tmp_path / "eta.json"
    assert run(["cosimp", "seed", "--seed", "5", "--out-bimodule", str(bm),
                "--out-eta", str(eta)]) == 0
    capsys.readouterr()
    derived = tmp_path / "derived.json"
    assert run(["cosimp", "derive", "--bimodule", str(bm), "--eta", str(eta),
                "--out", str(derived)]) == 0
    text = out_of(capsys)
    assert "PASS box monoid axioms" in text
    assert "PASS box module axioms" in text
    doc = json.loads(derived.read_text())
    assert set(doc) == {"monoid", "module", "h"}
    assert len(doc["monoid"]["levels"]) == len(doc["module"]["levels"]) + 1


def test_suite_is_deterministic_and_lists_skips(capsys):
    argv = ["suite", "--all", "--seed", "11", "--maxArity", "3", "--maxLevel", "3"]
    assert run(argv) == 0
    first = out_of(capsys)
    assert run(argv) == 0
    assert out_of(capsys) == first
    assert "SKIP" in first and "capped at 3" in first
    assert "failed" in first.splitlines()[-1]
    assert " 0 failed" in first.splitlines()[-1]


def test_suite_json_format(capsys):
    argv = ["suite", "--seed", "2", "--maxArity", "3", "--maxLevel", "3",
            "--format", "json"]
    assert run(argv) == 0
    doc = json.loads(out_of(capsys))
    assert doc["status"] == 0
    statuses = {item["status"] for item in doc["items"]}
    assert statuses == {"pass", "skip"}
