import json

import pytest
from click.testing import CliRunner

from dblcat import default_budget
from dblcat.cli import main

from conftest import FIXTURES


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def fx(name):
    return FIXTURES / f"{name}.json"


def test_version():
    r = run("--version")
    assert r.exit_code == 0 and "0.1.0" in r.output


def test_check_axioms_ok_and_broken():
    assert run("check", "axioms", fx("sq_galois")).exit_code == 0
    r = run("check", "axioms", fx("broken_interchange"), "--format", "json")
    assert r.exit_code == 1
    payload = json.loads(r.stdout)
    assert payload["valid"] is False
    assert payload["violations"][0]["identity"] == "interchange"


def test_missing_file_is_input_error(tmp_path):
    assert run("check", "axioms", tmp_path / "nope.json").exit_code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("nerve", bad).exit_code == 2


def test_nerve_table():
    r = run("nerve", fx("sq_poset1"), "--levels", 2, 2)
    assert r.exit_code == 0
    assert "2,2\t20" in r.output.splitlines()


def test_nerve_over_budget():
    r = run("nerve", fx("sq_galois"), "--levels", 3, 3, "--budget", 1000)
    assert r.exit_code == 3
    assert default_budget() == 10 ** 7


def test_fragment():
    r = run("fragment", fx("sq_poset1"), "vertical", "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.stdout)["kind"]


def test_companion_and_conjoint():
    r = run("companion", fx("sq_poset2"), "--format", "json")
    assert r.exit_code == 0 and len(json.loads(r.stdout)) == 6
    r = run("conjoint", fx("sq_poset2"), "--format", "json")
    assert len(json.loads(r.stdout)) == 3
    assert run("companion", fx("sq_poset2"), "9->9").exit_code == 2


def test_extend_and_count():
    r = run("extend", fx("sq_poset2"), "--unit", "u1", "--levels", 2, 2, "--format", "json")
    assert r.exit_code == 0
    assert len(json.loads(r.stdout)["levels"]["2,2"]) == 20
    r = run("count-extensions", fx("sq_poset2"), "--unit", "u1", "--levels", 2, 2, "--format", "json")
    assert json.loads(r.stdout)["count"] == 1
    assert run("extend", fx("sq_poset2"), "--unit", "u99").exit_code == 2


def test_extend_rejects_non_unit():
    r = run("extend", fx("sq_poset2"), "--unit", "[0->1|1->2|0->1|1->2]")
    assert r.exit_code == 1


@pytest.mark.parametrize("cmd,args,n", [("comp", (1, 1), 6), ("conj", (2, 2), 20)])
def test_staircases(cmd, args, n):
    r = run(cmd, *args)
    assert r.exit_code == 0 and len(r.output.split()) == n


def test_sigma():
    assert run("sigma", 2).output.strip() == "000/001/011"


def test_gray_and_globe():
    r = run("gray", 1, 1, "--format", "json")
    assert r.exit_code == 0 and len(json.loads(r.stdout)["objects"]) == 4
    assert run("globe", 1, 2).exit_code == 0


def test_sq():
    r = run("sq", fx("poset2_2cat"), "--levels", 2, 2, "--format", "json")
    assert r.exit_code == 0
    assert json.loads(r.stdout)["nerve_sizes"]["2,2"] == 175
    assert run("sq", fx("sq_poset1")).exit_code == 2


def test_check_thm_c_and_d():
    r = run("check", "thmC", "--x", fx("free_vertical_arrow"), "--d", fx("sq_poset1"), "--format", "json")
    assert r.exit_code == 0 and json.loads(r.stdout)["ok"]
    r = run("check", "thmD", "--x", fx("poset1_2cat"), "--d", fx("galois_2cat"), "--format", "json")
    assert r.exit_code == 0
    assert len(json.loads(r.stdout)["results"]) == 43
    assert run("check", "thmC").exit_code == 2


def test_dblfun_and_funlax():
    r = run("dblfun", fx("terminal"), fx("sq_poset2"), "--format", "json")
    assert r.exit_code == 0 and len(json.loads(r.stdout)["objects"]) == 3
    assert run("dblfun", fx("free_square"), fx("sq_poset2"), "--budget", 100).exit_code == 3
    assert run("funlax", fx("sq_poset1"), fx("galois_2cat")).exit_code == 2


def test_verify(tmp_path):
    r = run("verify", "fragments", "--fixtures", FIXTURES, "--format", "json")
    assert r.exit_code == 0
    assert all(rec["status"] == "pass" for rec in json.loads(r.stdout)["records"])
    assert run("verify", "thmD", "--fixtures", tmp_path / "absent").exit_code == 2
    assert run("verify", "thmD", "--fixtures", tmp_path).exit_code == 2
