import json
import os

import pytest

from extquot.cli import main
from extquot.errors import InputError
from extquot.harness import run_scenario
from extquot.ring import Ring
from extquot.scenario import Scenario

from conftest import GOLDEN


def make_scn(tmp_path, name, kind, ring, payload, seed=None):
    scn = Scenario(kind, ring, payload, seed=seed)
    path = os.path.join(tmp_path, name)
    scn.save(path)
    return path, scn


def test_scenario_round_trip(R5):
    scn = Scenario("groebner", R5, {"ideal": ["x1^2+x2", "x2^2"]}, seed=7)
    text = scn.canonical_text()
    again = Scenario.from_text(text)
    assert again.canonical_text() == text
    assert again.digest() == scn.digest()
    assert again.seed == 7


def test_scenario_parse_errors(R5):
    with pytest.raises(InputError):
        Scenario.from_text("{broken")
    with pytest.raises(InputError):
        Scenario.from_text(json.dumps({"format": "nope"}))
    with pytest.raises(InputError):
        Scenario.from_text(json.dumps(
            {"format": "extquot-scenario/1", "kind": "groebner",
             "ring": {"p": 4, "r": 2}, "payload": {}}))


def test_certificate_determinism(R5):
    scn = Scenario("groebner", R5,
                   {"ideal": ["x1^2+x2^2", "x1*x2"], "membership_degree": 4})
    a = run_scenario(scn).canonical_text()
    b = run_scenario(Scenario.from_text(scn.canonical_text())).canonical_text()
    assert a == b


def test_cli_exit_codes(tmp_path):
    tmp = str(tmp_path)
    R = Ring(5, 2)
    ok_path, _ = make_scn(tmp, "ok.scn", "groebner", R,
                          {"ideal": ["x1", "x2"], "membership_degree": 3})
    assert main(["groebner", ok_path]) == 0
    assert os.path.exists(ok_path + ".cert.json")

    broken = os.path.join(tmp, "broken.scn")
    with open(broken, "w") as fh:
        fh.write("{nope")
    assert main(["groebner", broken]) == 2

    # kind mismatch is an input error
    assert main(["exterior", ok_path]) == 2

    # hypothesis violation: zero lambda has the wrong kernel
    bad_path, _ = make_scn(tmp, "bad.scn", "exterior-corollary", R, {
        "X": {"ambient_rank": 1, "relations": []},
        "lambda": [["0"]],
        "I": [{"module": {"ambient_rank": 1, "relations": []},
               "inclusion": [["x1"]]}],
        "J": [[["x1"]]],
        "primes": []})
    assert main(["exterior", bad_path]) == 3

    # resource limit: impossible degree ceiling
    lim_scn = Scenario("groebner", R, {"ideal": ["x1^3+x2", "x2^3*x1+x1"]})
    lim_scn.limits.degree = 2
    lim_path = os.path.join(tmp, "lim.scn")
    lim_scn.save(lim_path)
    assert main(["groebner", lim_path]) == 4


def test_cli_verify_and_out(tmp_path):
    out = os.path.join(str(tmp_path), "cert.json")
    assert main(["verify", "A", os.path.join(GOLDEN, "koszul_l1.scn"),
                 "--out", out]) == 0
    with open(out) as fh:
        cert = json.load(fh)
    assert cert["pass"] is True
    assert cert["kind"] == "theorem-A"
    assert cert["chern"]["c2_left"]["terms"] == [
        {"multiplicity": 1, "prime_generators": ["x1", "x2"]}]


def test_cli_suite_determinism(tmp_path, capsys):
    args = ["suite", "--kind", "groebner", "--count", "5", "--seed", "3",
            "--ring", "5:2", "--json"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    obj = json.loads(first)
    assert obj["data"]["summary"]["fail"] == 0


def test_cli_oracle(tmp_path):
    tmp = str(tmp_path)
    R = Ring(5, 2)
    path, _ = make_scn(tmp, "dim.scn", "oracle", R,
                       {"check": "dimension",
                        "ideal": ["x1^2", "x1*x2", "x2^3"], "expected": 4})
    assert main(["oracle", path]) == 0
    path2, _ = make_scn(tmp, "mem.scn", "oracle", R,
                        {"check": "membership", "ideal": ["x1^2"],
                         "element": "x1^3", "degree_bound": 4})
    assert main(["oracle", path2]) == 0
    # unbounded dimension is an input error
    path3, _ = make_scn(tmp, "unb.scn", "oracle", R,
                        {"check": "dimension", "ideal": ["x1"]})
    assert main(["oracle", path3]) == 2


def test_golden_files_round_trip():
    for name in sorted(os.listdir(GOLDEN)):
        if not name.endswith(".scn"):
            continue
        with open(os.path.join(GOLDEN, name)) as fh:
            text = fh.read()
        assert Scenario.from_text(text).canonical_text() == text


def test_invariant_scenario(tmp_path):
    R = Ring(5, 2)
    scn = Scenario("invariant", R, {
        "module": {"ambient_rank": 1, "relations": [["x1^2", "x1*x2"]]},
        "candidates": [{"generators": ["x1", "x2"], "codim": 2,
                        "provenance": "linear-form-generated"}],
        "checks": ["c1", "t2", "pseudo-null", "length", "fitting"]})
    cert = run_scenario(scn)
    assert cert.passed
    assert cert.scalars["c1"] == "x1"
    assert cert.chern["t2"]["terms"][0]["multiplicity"] == 1
    assert cert.data["lengths"] == {"(x1, x2)": 1}


def test_cli_limits_flag(tmp_path):
    tmp = str(tmp_path)
    R = Ring(5, 2)
    path, _ = make_scn(tmp, "lim2.scn", "groebner", R,
                       {"ideal": ["x1^3+x2", "x2^3*x1+x1"]})
    assert main(["groebner", path, "--limits", "degree=2"]) == 4
    assert main(["groebner", path, "--limits", "degree=40,gb=500"]) == 0
    assert main(["groebner", path, "--limits", "bogus=1"]) == 2


def test_failing_scenario_persisted_for_replay(R5):
    # force a fake failure path by running a suite of count 1 whose instance
    # passes, then check the replay payload machinery on a constructed one
    from extquot.exterior import random_corollary_scenario
    from extquot.scenario import exterior_payload
    scn = random_corollary_scenario(R5, 77)
    payload = exterior_payload(scn)
    replay = Scenario("exterior-corollary", R5, payload, seed=77)
    cert = run_scenario(replay)
    assert cert.passed


def test_theorem_C_failure_exit(tmp_path):
    # rhs modules that do not sum to the left side force exit code 1
    R = Ring(5, 2)
    path, _ = make_scn(str(tmp_path), "badC.scn", "theorem-C", R, {
        "X": {"ambient_rank": 1, "relations": []},
        "lambda": [["1"]],
        "I": [{"module": {"ambient_rank": 1, "relations": []},
               "inclusion": [["x1"]]},
              {"module": {"ambient_rank": 1, "relations": []},
               "inclusion": [["x2"]]}],
        "J": [[["x1"]], [["x2"]]],
        "primes": [{"generators": ["x1", "x2"], "codim": 2,
                    "provenance": "linear-form-generated"}],
        "rhs_modules": [{"ambient_rank": 0, "relations": []}] * 4})
    assert main(["verify", "C", path]) == 1
