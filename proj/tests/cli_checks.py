"""Command-line contract tests for the twistkit binary.

usage: cli_checks.py <twistkit> <schema> <fixture dir> <case>
"""

import json
import subprocess
import sys

import jsonschema

TOOL, SCHEMA, FIXTURES, CASE = sys.argv[1:5]


def run(*args, env=None):
    p = subprocess.run([TOOL, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def report(*args):
    code, out, err = run(*args, "--format", "json")
    assert code in (0, 1), f"exit {code}: {err}"
    doc = json.loads(out)
    with open(SCHEMA) as f:
        jsonschema.validate(doc, json.load(f))
    assert doc["exit_code"] == code
    return code, doc


def check(name, doc):
    for c in doc["checks"]:
        if c["name"] == name:
            return c
    raise AssertionError(f"no check {name}")


def case_exit_codes():
    assert run("table2", "--config", "V")[0] == 2
    assert run("residual", "--config", "IV-a", "--k1", "1", "--k2", "1", "--g", "5")[0] == 2
    assert run("coeffs", "--trunc", "0")[0] == 2
    assert run("verify-all", "--no-such-flag")[0] == 2
    assert run("calibrate", "--expansion", FIXTURES + "/missing.json")[0] == 2
    assert run("calibrate", "--pairing-sign", "x")[0] == 2
    assert run()[0] == 2
    assert run("--help")[0] == 0
    assert run("coeffs", "--config", "II-a", "--g", "1", "--h", "1")[0] == 0


def case_verify_all():
    code, doc = report("verify-all", "--trials", "20")
    assert code == 0, [c for c in doc["checks"] if not c["passed"]]
    verdicts = [c["verdict"] for c in doc["results"]["configurations"]]
    assert verdicts == ["not a mapping class"] * 7, verdicts
    assert doc["provenance"] == {"expansion_id": "builtin:massuyeau", "authoritative_degree": 3,
                                 "seed": 0, "trunc": 8}


def case_pairing_flip():
    code, doc = report("verify-all", "--trials", "10", "--pairing-sign", "-")
    assert code == 0
    winners = {c["curve"]: c["winner"] for c in doc["results"]["calibration"]}
    assert winners == {"a1": "b1 a1^-1", "b1": "a1 b1"}, winners
    _, plus = report("calibrate")
    winners = {c["curve"]: c["winner"] for c in plus["results"]["conventions"]}
    assert winners == {"a1": "b1 a1", "b1": "a1 b1^-1"}, winners


def case_corrupted_table():
    code, doc = report("verify-all", "--trials", "10", "--expansion", FIXTURES + "/corrupt_beta1_g2.json")
    assert code == 1
    failing = {c["name"] for c in doc["checks"] if not c["passed"]}
    assert "check_boundary:g=2" in failing, failing
    assert "mismatch at degree 3" in check("check_boundary:g=2", doc)["detail"]
    code, doc = report("expansion-check", "--expansion", FIXTURES + "/corrupt_beta1_g2.json")
    assert code == 1
    claims = doc["results"]["tables"][0]["claims"]
    assert [c["status"] for c in claims[:4]] == ["holds", "holds", "fails", "fails"], claims


def case_file_expansion():
    code, doc = report("verify-all", "--trials", "10", "--expansion", FIXTURES + "/massuyeau_g2.json")
    assert code == 0
    assert len([c for c in doc["results"]["configurations"] if "verdict" in c]) == 7


def case_coeffs():
    code, doc = report("coeffs", "--config", "I", "--g", "2")
    assert code == 0
    assert doc["results"]["m"] == [2, 2, -1]
    _, doc = report("coeffs", "--config", "II-a", "--g", "1", "--h", "1")
    assert doc["results"]["constraints"] == ["m1 + m2 = 4", "m3 = -1"], doc["results"]["constraints"]
    _, doc = report("coeffs", "--config", "II-b", "--g", "1", "--h", "1")
    assert doc["results"]["constraints"] == ["m1 + m3 = 1", "m2 = 2"], doc["results"]["constraints"]


def case_residual():
    code, doc = report("residual", "--config", "IV-a", "--k1", "1", "--k2", "1")
    assert code == 0
    r = doc["results"]
    assert r["residual_degree"] == 8 and r["nonzero"] is True and r["matches_expected"] is True
    assert all(len(t["word"]) == 8 for t in r["residual"]["terms"])
    code, doc = report("residual", "--trunc", "6")
    skipped = [c["label"] for c in doc["results"]["configurations"] if "skipped" in c]
    assert len(skipped) == 2 and code == 0, skipped
    assert run("residual", "--config", "IV-b", "--trunc", "6")[0] == 2


def case_table2():
    code, doc = report("table2", "--config", "II-a", "--g", "2", "--h", "2")
    assert code == 0
    row = doc["results"]["rows"][0]
    assert row["basis"] == ["u1", "u2", "u3"]
    assert row["l4x"]["coords"] == ["1/2", "-1/2", "1/24"]
    assert row["l4y"]["coords"] == [0, 0, "1/24"]
    assert row["m"]["coords"] == [0, "1/2", "-1/12"]
    _, doc = report("table2")
    assert len(doc["results"]["rows"]) == 6


def case_lemmas_and_checks():
    code, doc = report("lemmas", "--trials", "10")
    assert code == 0 and [d["name"] for d in doc["results"]["suites"]] == [
        "lemma:degree2", "lemma:degree4", "lemma:degree6", "lemma:degree8"]
    code, doc = report("expansion-check")
    assert code == 0 and [t["genus"] for t in doc["results"]["tables"]] == [1, 2, 3]


def case_determinism():
    import os
    args = ["verify-all", "--trials", "10", "--seed", "7", "--format", "json"]
    a = run(*args)[1]
    b = run(*args, env=dict(os.environ, TWISTKIT_THREADS="1"))[1]
    c = run(*args, env=dict(os.environ, TWISTKIT_THREADS="4"))[1]
    assert a == b == c
    assert run(*args[:-4], "--seed", "8", "--format", "json")[1] != a
    for cmd in (["table2"], ["coeffs"], ["calibrate"], ["expansion-check"], ["lemmas", "--trials", "5"]):
        assert run(*cmd, "--format", "json")[1] == run(*cmd, "--format", "json")[1], cmd


def case_text_output():
    code, out, _ = run("verify-all", "--trials", "5")
    assert code == 0
    assert out.count("not a mapping class") == 7
    assert "result: " in out and "FAIL" not in out
    code, out, _ = run("coeffs", "--config", "I")
    assert "m = (2, 2, -1)" in out


globals()["case_" + CASE.replace("-", "_")]()
print("ok", CASE)
